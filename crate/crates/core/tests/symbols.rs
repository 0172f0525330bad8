//! Symbols of `σ_K` for `Sp(p,q)` against the two printed arrays.

use diracidx::catalog::Catalog;
use diracidx::springer::{macdonald_parameter, symbol_c};

// Top row 0, 2, …, 2q. Bottom row 2, 4, …, 2(q−p) then 2(q−p)+3, …, 2q+1
// when q > p, and 3, 5, …, 2q+1 when q = p.
fn printed(p: usize, q: usize) -> (Vec<usize>, Vec<usize>) {
    let top: Vec<usize> = (0..=q).map(|i| 2 * i).collect();
    let bottom: Vec<usize> = if q > p {
        (1..=q - p).map(|i| 2 * i).chain((0..p).map(|j| 2 * (q - p) + 3 + 2 * j)).collect()
    } else {
        (1..=q).map(|i| 2 * i + 1).collect()
    };
    (top, bottom)
}

#[test]
fn sp_pq_symbols_match_the_printed_arrays() {
    let cat = Catalog::bundled();
    for q in 1..=6 {
        for p in 1..=q {
            let param = macdonald_parameter(&cat.resolve(&format!("sp({p},{q})")).unwrap()).unwrap();
            let s = symbol_c(&param, p + q).unwrap();
            assert_eq!((s.top, s.bottom), printed(p, q), "Sp({p},{q})");
        }
    }
}
