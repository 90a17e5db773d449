use crate::permutation::Permutation;

use super::{Constellation, Mode};

impl Constellation {
    /// Bipartite map obtained by subdividing every hyperedge.
    ///
    /// Dart `d` of the input becomes the black half `d` and the white half
    /// `d + n` of a new edge. Black vertices rotate by `σ`, white vertices by
    /// `α`, so both input cycle families reappear as σ-cycles of the output.
    /// A map-mode input is accepted too; its α-cycles become degree-2 white
    /// vertices.
    pub fn subdivide_hypermap(&self) -> Constellation {
        let n = self.n_darts();
        let mut sigma = Vec::with_capacity(2 * n);
        sigma.extend((0..n).map(|i| self.sigma().apply0(i)));
        sigma.extend((0..n).map(|i| self.alpha().apply0(i) + n));
        let alpha: Vec<usize> = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        Constellation::from_sigma_alpha(
            Permutation::from_zero_based_unchecked(sigma),
            Permutation::from_zero_based_unchecked(alpha),
            Mode::Map,
        )
        .expect("subdivision of a valid constellation is a valid map")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_input_keeps_genus() {
        let torus = Constellation::map_from_cycles(6, &[&[1, 2, 3], &[4, 5, 6]], &[&[1, 4], &[2, 5], &[3, 6]]).unwrap();
        let sub = torus.subdivide_hypermap();
        assert_eq!(sub.n_darts(), 12);
        assert_eq!(
            sub.euler_and_genus().unwrap().genus,
            torus.euler_and_genus().unwrap().genus
        );
    }

    #[test]
    fn three_cycle_hypermap() {
        let s = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let c = Constellation::from_sigma_alpha(s.clone(), s, Mode::Hypermap).unwrap();
        let sub = c.subdivide_hypermap();
        assert_eq!(sub.n_darts(), 6);
        assert!(sub.alpha().is_fixed_point_free_involution());
        assert_eq!(sub.sigma().cycles(), vec![vec![1, 2, 3], vec![4, 5, 6]]);
        // φ = σ⁻¹α⁻¹ = (1,2,3) is a single face: χ = 1 - 3 + 2.
        assert_eq!(sub.euler_and_genus().unwrap().chi, 0);
        assert_eq!(c.genus(), 1);
    }

    #[test]
    fn single_dart_hypermap() {
        let id = Permutation::identity(1);
        let c = Constellation::new(id.clone(), id.clone(), id, Mode::Hypermap).unwrap();
        let sub = c.subdivide_hypermap();
        assert_eq!(sub.n_darts(), 2);
        assert_eq!(sub.euler_and_genus().unwrap().genus, 0);
    }
}
