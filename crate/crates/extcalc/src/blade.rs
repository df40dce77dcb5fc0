//! Basis blades as bitmasks: bit `i` set means the basis covector `dx_i`
//! (or basis vector field) with coordinate index `i` is a factor, factors
//! always in increasing index order.

/// A strictly increasing index tuple encoded as a bitmask.
pub type Blade = u64;

pub fn degree(b: Blade) -> usize {
    b.count_ones() as usize
}

pub fn indices(b: Blade) -> impl Iterator<Item = usize> {
    (0..64u32).filter(move |i| b & (1 << i) != 0).map(|i| i as usize)
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Option<Blade> {
    let mut b: Blade = 0;
    for i in it {
        let bit = 1u64 << i;
        if b & bit != 0 {
            return None; // repeated index
        }
        b |= bit;
    }
    Some(b)
}

pub fn contains(b: Blade, i: usize) -> bool {
    b & (1u64 << i) != 0
}

fn parity(n: u32) -> i32 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of `e_a ^ e_b` relative to the sorted blade `a | b`; `None` when the
/// blades share an index.
pub fn wedge_sign(a: Blade, b: Blade) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (a >> (i + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(parity(swaps))
}

/// Sign of `e_i ^ e_b` relative to the sorted blade `b | {i}`.
pub fn insert_sign(i: usize, b: Blade) -> i32 {
    parity((b & ((1u64 << i) - 1)).count_ones())
}

/// Sign from moving the factor `i` of `b` to the front (its position parity).
pub fn remove_front_sign(i: usize, b: Blade) -> i32 {
    parity((b & ((1u64 << i) - 1)).count_ones())
}

/// Sign from moving the factor `i` of `b` to the back.
pub fn remove_back_sign(i: usize, b: Blade) -> i32 {
    parity((b >> (i + 1)).count_ones())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        // dx ^ dy keeps orientation, dy ^ dx flips it.
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b01, 0b01), None);
        // dz ^ (dx ^ dy) needs two transpositions.
        assert_eq!(wedge_sign(0b100, 0b011), Some(1));
    }

    #[test]
    fn insert_and_remove() {
        // dx into {dy, dz}: already in front.
        assert_eq!(insert_sign(0, 0b110), 1);
        // dy into {dx, dz}: one transposition.
        assert_eq!(insert_sign(1, 0b101), -1);
        assert_eq!(remove_front_sign(2, 0b111), 1);
        assert_eq!(remove_back_sign(0, 0b111), 1);
        assert_eq!(remove_back_sign(0, 0b011), -1);
    }

    #[test]
    fn round_trip_indices() {
        let b = from_indices([0, 2, 5]).unwrap();
        assert_eq!(indices(b).collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(degree(b), 3);
        assert!(from_indices([1, 1]).is_none());
    }
}
