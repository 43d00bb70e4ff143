use std::fmt;

use serde::{Deserialize, Serialize};

use crate::QuadError;

/// Kronecker symbol (d | n) for n >= 1.
pub fn kronecker(d: i64, n: u64) -> i32 {
    let mut n = n;
    let mut result = 1i32;
    while n.is_multiple_of(2) {
        n /= 2;
        match d.rem_euclid(8) {
            0 | 2 | 4 | 6 => return 0,
            1 | 7 => {}
            _ => result = -result,
        }
    }
    // Jacobi (d | n) for odd n
    let mut a = d.rem_euclid(n as i64) as u64;
    let mut m = n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

fn squarefree(n: u64) -> bool {
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q * q) {
            return false;
        }
        q += 1;
    }
    true
}

pub fn is_fundamental(d: i64) -> bool {
    if d >= -2 {
        return false;
    }
    let m = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => squarefree(m),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplittingType::Split => "split",
            SplittingType::Inert => "inert",
            SplittingType::Ramified => "ramified",
        })
    }
}

pub fn splitting_type(d_k: i64, p: u64) -> Result<SplittingType, QuadError> {
    if p == 2 {
        return Err(QuadError::EvenPrime);
    }
    Ok(match kronecker(d_k, p) {
        1 => SplittingType::Split,
        -1 => SplittingType::Inert,
        _ => SplittingType::Ramified,
    })
}

/// O_c = Z + c O_K inside K = Q(sqrt(D_K)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadOrder {
    pub field_disc: i64,
    pub conductor: u64,
}

impl QuadOrder {
    pub fn new(field_disc: i64, conductor: u64) -> Result<Self, QuadError> {
        if !is_fundamental(field_disc) {
            return Err(QuadError::NotFundamental(field_disc));
        }
        if conductor == 0 {
            return Err(QuadError::Conductor);
        }
        Ok(QuadOrder {
            field_disc,
            conductor,
        })
    }

    pub fn maximal(field_disc: i64) -> Result<Self, QuadError> {
        Self::new(field_disc, 1)
    }

    pub fn discriminant(&self) -> i64 {
        let c = self.conductor as i64;
        c * c * self.field_disc
    }

    /// Units of O_K: 6 for D = -3, 4 for D = -4, else 2.
    pub fn field_units(&self) -> u64 {
        match self.field_disc {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }

    /// [O_K^* : O_c^*]
    pub fn unit_index(&self) -> u64 {
        if self.conductor == 1 {
            1
        } else {
            self.field_units() / 2
        }
    }

    pub fn with_conductor(&self, conductor: u64) -> Result<Self, QuadError> {
        Self::new(self.field_disc, conductor)
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O_{} in Q(sqrt({}))", self.conductor, self.field_disc)
    }
}

/// (x + y sqrt(D)) / 2 in O_K, x = y D mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub disc: i64,
    pub x: i64,
    pub y: i64,
}

impl QuadInt {
    pub fn new(disc: i64, x: i64, y: i64) -> Result<Self, QuadError> {
        if (x - y * disc).rem_euclid(2) != 0 {
            return Err(QuadError::NotIntegral);
        }
        Ok(QuadInt { disc, x, y })
    }

    pub fn rational(disc: i64, n: i64) -> Self {
        QuadInt { disc, x: 2 * n, y: 0 }
    }

    pub fn norm(&self) -> i64 {
        (self.x * self.x - self.disc * self.y * self.y) / 4
    }

    pub fn trace(&self) -> i64 {
        self.x
    }

    pub fn conjugate(&self) -> Self {
        QuadInt {
            disc: self.disc,
            x: self.x,
            y: -self.y,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // (x1 + y1 r)(x2 + y2 r)/4 = ((x1x2 + D y1y2) + (x1y2 + x2y1) r)/4
        let x = (self.x * other.x + self.disc * self.y * other.y) / 2;
        let y = (self.x * other.y + other.x * self.y) / 2;
        QuadInt {
            disc: self.disc,
            x,
            y,
        }
    }

    /// Image in O_K / n O_K written as (x, y) mod n in the basis (1, omega)
    /// with omega = (D + sqrt(D)) / 2.
    pub fn omega_coords(&self) -> (i64, i64) {
        // (x + y sqrt D)/2 = (x - yD)/2 + y omega
        ((self.x - self.y * self.disc) / 2, self.y)
    }

    /// Whether the element lies in O_c = Z + c O_K.
    pub fn in_order(&self, conductor: u64) -> bool {
        self.omega_coords().1.rem_euclid(conductor as i64) == 0
    }
}
