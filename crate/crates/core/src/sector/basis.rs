use std::sync::{Arc, OnceLock};

use crate::error::{invalid, Result};

/// Masks are `u64`, so exact enumerations support at most this many atoms.
pub const MAX_MASK_ATOMS: usize = 63;

fn binomial_table() -> &'static [[u64; 65]; 65] {
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for n in 0..65 {
            t[n][0] = 1;
            for r in 1..=n {
                t[n][r] = t[n - 1][r - 1].saturating_add(t[n - 1][r]);
            }
        }
        t
    })
}

/// `C(n, r)` for `n <= 64`, saturating.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        0
    } else {
        binomial_table()[n][r]
    }
}

/// Position of `mask` among all masks of the same popcount in ascending
/// numeric order (the combinatorial number system).
pub fn colex_rank(mask: u64) -> usize {
    let mut rank = 0u64;
    let mut rest = mask;
    let mut t = 1;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rank += binomial(b, t);
        rest &= rest - 1;
        t += 1;
    }
    rank as usize
}

/// All `n`-bit masks with `s` bits set, ascending.
pub fn masks_with_popcount(n: usize, s: usize) -> Vec<u64> {
    if s > n {
        return Vec::new();
    }
    if s == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(n, s) as usize);
    let limit = 1u64 << n;
    let mut m: u64 = (1u64 << s) - 1;
    while m < limit {
        out.push(m);
        // Gosper's hack: next larger integer with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Dimension of the `k`-excitation sector of `n_atoms` atoms, saturating.
pub fn sector_dimension(n_atoms: usize, k: usize) -> u64 {
    (0..=k.min(n_atoms))
        .map(|s| binomial(n_atoms.min(64), s))
        .fold(0u64, u64::saturating_add)
}

/// One basis ket `|photons> |atom_mask>`; bit `i` set means atom `i` excited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub photons: usize,
    pub atom_mask: u64,
}

/// The `k`-excitation sector: every `(photons, mask)` with
/// `photons + popcount(mask) == k`, ordered by atomic excitation count and
/// then by mask value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    n_atoms: usize,
    k: usize,
    masks: Vec<u64>,
    /// `offsets[s]..offsets[s + 1]` is the block with `s` excited atoms.
    offsets: Vec<usize>,
}

impl SectorBasis {
    pub fn enumerate(n_atoms: usize, k: usize) -> Result<Self> {
        if n_atoms == 0 || n_atoms > MAX_MASK_ATOMS {
            return invalid(format!(
                "sector enumeration supports 1..={MAX_MASK_ATOMS} atoms, got {n_atoms}"
            ));
        }
        let smax = k.min(n_atoms);
        let mut masks = Vec::new();
        let mut offsets = vec![0];
        for s in 0..=smax {
            masks.extend(masks_with_popcount(n_atoms, s));
            offsets.push(masks.len());
        }
        Ok(Self {
            n_atoms,
            k,
            masks,
            offsets,
        })
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.masks.len()
    }

    /// Largest number of excited atoms in the sector, `min(k, N)`.
    pub fn max_atomic(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn state(&self, index: usize) -> BasisState {
        let atom_mask = self.masks[index];
        BasisState {
            photons: self.k - atom_mask.count_ones() as usize,
            atom_mask,
        }
    }

    pub fn states(&self) -> impl Iterator<Item = BasisState> + '_ {
        (0..self.dim()).map(|i| self.state(i))
    }

    pub fn mask(&self, index: usize) -> u64 {
        self.masks[index]
    }

    pub fn index_of(&self, state: BasisState) -> Option<usize> {
        let s = state.atom_mask.count_ones() as usize;
        if s > self.max_atomic()
            || state.photons + s != self.k
            || state.atom_mask >> self.n_atoms != 0
        {
            return None;
        }
        Some(self.offsets[s] + colex_rank(state.atom_mask))
    }

    /// Index of `mask`, assuming it lies in the sector.
    pub(crate) fn index_of_mask(&self, mask: u64) -> usize {
        self.offsets[mask.count_ones() as usize] + colex_rank(mask)
    }

    /// Index range of the block with `s` excited atoms.
    pub fn level_range(&self, s: usize) -> std::ops::Range<usize> {
        self.offsets[s]..self.offsets[s + 1]
    }

    pub fn level_masks(&self, s: usize) -> &[u64] {
        &self.masks[self.level_range(s)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sectors() {
        let b = SectorBasis::enumerate(3, 1).unwrap();
        let got: Vec<_> = b.states().map(|s| (s.photons, s.atom_mask)).collect();
        assert_eq!(got, vec![(1, 0b000), (0, 0b001), (0, 0b010), (0, 0b100)]);
        assert_eq!(SectorBasis::enumerate(2, 2).unwrap().dim(), 4);
        assert_eq!(SectorBasis::enumerate(16, 3).unwrap().dim(), 697);
        assert_eq!(sector_dimension(16, 3), 697);
    }

    #[test]
    fn excitations_beyond_atoms_cap_the_levels() {
        let b = SectorBasis::enumerate(2, 5).unwrap();
        assert_eq!(b.dim(), 4);
        assert_eq!(b.max_atomic(), 2);
        assert_eq!(b.state(3), BasisState { photons: 3, atom_mask: 0b11 });
    }

    #[test]
    fn index_round_trip_and_ordering() {
        let b = SectorBasis::enumerate(9, 4).unwrap();
        for (i, st) in b.states().enumerate() {
            assert_eq!(b.index_of(st), Some(i));
        }
        for w in (0..b.dim()).collect::<Vec<_>>().windows(2) {
            let (a, c) = (b.mask(w[0]), b.mask(w[1]));
            assert!(a.count_ones() < c.count_ones() || (a.count_ones() == c.count_ones() && a < c));
        }
        assert_eq!(b.index_of(BasisState { photons: 0, atom_mask: 0b1 }), None);
        assert_eq!(b.index_of(BasisState { photons: 3, atom_mask: 1 << 9 }), None);
    }

    #[test]
    fn dimension_formula() {
        for n in 1..=12 {
            for k in 0..=14 {
                let want: u64 = (0..=k.min(n)).map(|s| binomial(n, s)).sum();
                assert_eq!(SectorBasis::enumerate(n, k).unwrap().dim() as u64, want);
            }
        }
    }

    #[test]
    fn rejects_too_many_atoms() {
        assert!(SectorBasis::enumerate(64, 1).is_err());
        assert!(SectorBasis::enumerate(0, 1).is_err());
    }
}
