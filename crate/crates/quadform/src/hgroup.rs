use std::sync::Arc;

use cmlp_dirichlet::{residue_units, UnitGroup};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelian;
use crate::classgroup::ClassGroup;
use crate::form::Form;
use crate::heegner::{heegner_ideal, HeegnerIdeal};
use crate::order::QuadOrder;
use crate::QuadError;

/// H(c, N) as Pic(O_c) x (O_K / N)^*, with O_K / N identified with Z / N
/// through the Heegner ideal.  Element index = class * phi(N) + unit index.
#[derive(Clone, Debug)]
pub struct HGroup {
    classes: ClassGroup,
    heegner: HeegnerIdeal,
    units: Arc<UnitGroup>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HGroupFile {
    pub field_disc: i64,
    pub conductor: u64,
    pub level: u64,
    pub heegner_b: i64,
    pub class_number: usize,
    pub unit_count: usize,
    /// (class form, residue mod N) per element
    pub elements: Vec<(Form, u64)>,
    pub table: Vec<Vec<usize>>,
}

impl HGroup {
    pub fn new(classes: ClassGroup, heegner: HeegnerIdeal) -> Result<Self, QuadError> {
        let order = *classes.order();
        if order.field_disc != heegner.field_disc {
            return Err(QuadError::WrongDiscriminant(heegner.field_disc));
        }
        if order.conductor.gcd(&heegner.norm) != 1 {
            return Err(QuadError::NotCoprime {
                conductor: order.conductor,
                level: heegner.norm,
            });
        }
        Ok(HGroup {
            classes,
            heegner,
            units: residue_units(heegner.norm),
        })
    }

    pub fn order(&self) -> &QuadOrder {
        self.classes.order()
    }

    pub fn classes(&self) -> &ClassGroup {
        &self.classes
    }

    pub fn heegner(&self) -> &HeegnerIdeal {
        &self.heegner
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    pub fn level(&self) -> u64 {
        self.heegner.norm
    }

    pub fn unit_count(&self) -> usize {
        self.units.elements().len()
    }

    pub fn len(&self) -> usize {
        self.classes.class_number() * self.unit_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// (class index, residue mod N)
    pub fn element(&self, i: usize) -> (usize, u64) {
        let u = self.unit_count();
        (i / u, self.units.elements()[i % u])
    }

    pub fn index(&self, class: usize, residue: i64) -> Option<usize> {
        if class >= self.classes.class_number() {
            return None;
        }
        self.units
            .index_of(residue)
            .map(|j| class * self.unit_count() + j)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (cx, ux) = self.element(x);
        let (cy, uy) = self.element(y);
        let n = self.level();
        let prod = ((ux as u128 * uy as u128) % n as u128) as i64;
        self.index(self.classes.compose(cx, cy), prod)
            .expect("units closed under products")
    }

    pub fn inverse(&self, x: usize) -> usize {
        let (c, u) = self.element(x);
        let n = self.level();
        let inv = (1..=n.max(1))
            .find(|&v| (u as u128 * v as u128) % n as u128 == 1 % n as u128)
            .expect("unit");
        self.index(self.classes.inverse(c), inv as i64).expect("unit")
    }

    /// Projection to Pic(O_c).
    pub fn projection(&self, x: usize) -> usize {
        self.element(x).0
    }

    /// The element (principal class, a mod N).
    pub fn unit_image(&self, a: i64) -> Option<usize> {
        self.index(0, a)
    }

    /// Elements over the principal class.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.unit_count()).collect()
    }

    pub fn to_file(&self) -> HGroupFile {
        HGroupFile {
            field_disc: self.order().field_disc,
            conductor: self.order().conductor,
            level: self.level(),
            heegner_b: self.heegner.b,
            class_number: self.classes.class_number(),
            unit_count: self.unit_count(),
            elements: (0..self.len())
                .map(|i| {
                    let (c, u) = self.element(i);
                    (self.classes.form(c), u)
                })
                .collect(),
            table: (0..self.len())
                .map(|i| (0..self.len()).map(|j| self.mul(i, j)).collect())
                .collect(),
        }
    }
}

impl FiniteAbelian for HGroup {
    fn size(&self) -> usize {
        self.len()
    }

    fn op(&self, x: usize, y: usize) -> usize {
        self.mul(x, y)
    }
}

pub fn hgroup(field_disc: i64, conductor: u64, level: u64) -> Result<HGroup, QuadError> {
    let order = QuadOrder::new(field_disc, conductor)?;
    let heegner = heegner_ideal(field_disc, level).map_err(QuadError::NoHeegner)?;
    HGroup::new(ClassGroup::new(order)?, heegner)
}
