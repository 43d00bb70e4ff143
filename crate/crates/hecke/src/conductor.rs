use cmlp_quadform::{ClassGroup, QuadOrder};

use crate::character::HeckeChar;
use crate::HeckeError;

fn p_adic_split(c: u64, p: u64) -> (u32, u64) {
    let mut e = 0;
    let mut d = c;
    while d.is_multiple_of(p) {
        d /= p;
        e += 1;
    }
    (e, d)
}

/// Least n such that the class part of chi factors through Pic(O_{p^n d}),
/// where c = p^e d with p not dividing d.
pub fn conductor_ppart(chi: &HeckeChar, p: u64) -> Result<u32, HeckeError> {
    let order = QuadOrder::new(chi.field_disc, chi.conductor)?;
    let top = ClassGroup::new(order)?;
    if top.class_number() != chi.class_values.len() {
        return Err(HeckeError::Context);
    }
    let (e, d) = p_adic_split(chi.conductor, p);
    for n in 0..e {
        let lower = ClassGroup::new(order.with_conductor(p.pow(n) * d)?)?;
        let map = top.projection_to(&lower)?;
        let trivial_on_kernel = map
            .iter()
            .zip(&chi.class_values)
            .filter(|(img, _)| **img == 0)
            .all(|(_, v)| v.is_one());
        if trivial_on_kernel {
            return Ok(n);
        }
    }
    Ok(e)
}

/// Whether chi passes the gate n >= n_k(p).
pub fn passes_gate(chi: &HeckeChar, p: u64, threshold: u32) -> Result<bool, HeckeError> {
    Ok(conductor_ppart(chi, p)? >= threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate_chars;
    use cmlp_dirichlet::DirichletChar;
    use cmlp_quadform::hgroup;

    #[test]
    fn counts_match_lower_class_numbers() {
        // p = 5 inert in Q(sqrt -3); Pic(O_1), Pic(O_5), Pic(O_25) have 1, 2, 10
        let hg = hgroup(-3, 25, 7).unwrap();
        let chars = enumerate_chars(&hg, 2, 0, &DirichletChar::trivial(7)).unwrap();
        assert_eq!(chars.len(), 10);
        let parts: Vec<u32> = chars.iter().map(|c| conductor_ppart(c, 5).unwrap()).collect();
        let at_most = |n| parts.iter().filter(|&&e| e <= n).count();
        assert_eq!((at_most(0), at_most(1), at_most(2)), (1, 2, 10));
        assert_eq!(parts[0], 0);
        assert!(!passes_gate(&chars[0], 5, 1).unwrap());
    }

    #[test]
    fn prime_to_p_conductor() {
        let hg = hgroup(-23, 1, 3).unwrap();
        let chars = enumerate_chars(&hg, 2, 0, &DirichletChar::trivial(3)).unwrap();
        assert!(chars.iter().all(|c| conductor_ppart(c, 5).unwrap() == 0));
    }
}
