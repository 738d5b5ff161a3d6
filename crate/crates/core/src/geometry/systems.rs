//! Standard test systems, each with an open-set witness.

use alloc::vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{Ifs, OpenSet, Primitive, Similarity};

/// Middle-thirds Cantor set on `[0, 1]`.
pub fn cantor() -> Ifs {
    Ifs::on_line(&[(1.0 / 3.0, 0.0), (1.0 / 3.0, 2.0 / 3.0)])
        .and_then(|i| i.with_witness(OpenSet::unit_cube(1)))
        .expect("valid system")
}

/// The non-lattice line system `x ↦ x/2`, `x ↦ x/3 + 2/3`.
pub fn two_three() -> Ifs {
    Ifs::on_line(&[(0.5, 0.0), (1.0 / 3.0, 2.0 / 3.0)])
        .and_then(|i| i.with_witness(OpenSet::unit_cube(1)))
        .expect("valid system")
}

/// Sierpiński gasket on the equilateral triangle with unit side and vertices
/// `(0,0)`, `(1,0)`, `(1/2, √3/2)`.
pub fn sierpinski() -> Ifs {
    let h = 0.75f64.sqrt();
    let maps = [[0.0, 0.0], [0.5, 0.0], [0.25, h / 2.0]]
        .iter()
        .map(|t| Similarity::scaling(0.5, t.to_vec()).expect("valid map"))
        .collect();
    let witness = OpenSet::new(vec![Primitive::Box {
        lo: vec![0.0, 0.0],
        hi: vec![1.0, h],
    }])
    .expect("valid box");
    Ifs::new(maps)
        .and_then(|i| i.with_witness(witness))
        .expect("valid system")
}

/// Incentre of the gasket's triangle.
pub fn sierpinski_incenter() -> [f64; 2] {
    [0.5, 0.75f64.sqrt() / 3.0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::check_osc;

    #[test]
    fn witnesses_certify() {
        for ifs in [cantor(), two_three(), sierpinski()] {
            assert!(check_osc(&ifs).certified());
        }
    }
}
