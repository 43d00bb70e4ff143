use cmlp_dirichlet::factorize;
use serde::{Deserialize, Serialize};

use crate::form::Form;
use crate::order::kronecker;

/// The ideal [N, (-b + sqrt(D)) / 2] of O_K, with O_K / it = Z / N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeegnerIdeal {
    pub field_disc: i64,
    pub norm: u64,
    pub b: i64,
}

impl HeegnerIdeal {
    pub fn form(&self) -> Form {
        let n = self.norm as i64;
        Form::new(n, self.b, (self.b * self.b - self.field_disc) / (4 * n))
    }

    /// Residue mod N of x + y omega, omega = (D + sqrt D)/2.  Since
    /// (-b + sqrt D)/2 lies in the ideal, omega = (D + b)/2 mod it.
    pub fn reduce(&self, x: i64, y: i64) -> u64 {
        let n = self.norm as i128;
        let omega = ((self.field_disc + self.b) / 2) as i128;
        (x as i128 + y as i128 * omega).rem_euclid(n) as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum HeegnerFailure {
    Inert { prime: u64 },
    RamifiedSquare { prime: u64 },
}

/// b with b^2 = D mod 4N, found by search.
fn search(d: i64, n: u64) -> Option<i64> {
    let n = n as i64;
    (0..2 * n).find(|&b| (b * b - d).rem_euclid(4 * n) == 0)
}

pub fn heegner_ideal(field_disc: i64, norm: u64) -> Result<HeegnerIdeal, HeegnerFailure> {
    for (l, e) in factorize(norm) {
        match kronecker(field_disc, l) {
            -1 => return Err(HeegnerFailure::Inert { prime: l }),
            0 if e > 1 => return Err(HeegnerFailure::RamifiedSquare { prime: l }),
            _ => {}
        }
    }
    let b = search(field_disc, norm).expect("split or simply ramified primes admit a root");
    Ok(HeegnerIdeal {
        field_disc,
        norm,
        b,
    })
}
