//! Path-family values computed column by column agree with the value over
//! whole path words, and witnesses are genuine.

use rand::Rng;

use tabstab::lattice::{column_split_check, family_ell, LatticePath, PathFamily, PathMatrix};
use tabstab::random::{random_family, random_tableau, trial_rng};
use tabstab::SkewTableau;

#[test]
fn staircase_path_reads_three_copies() {
    let t = SkewTableau::new(
        vec![2, 1, 0],
        vec![vec![1, 4, 6, 8], vec![3, 5, 9], vec![2, 7]],
    )
    .unwrap();
    let m = PathMatrix::build(&t, 3).unwrap();
    let p: LatticePath = "(1,1)-(1,3)-(3,3)".parse().unwrap();
    let w = m.path_word(&p).unwrap();
    assert_eq!(&w.letters()[..9], &[2, 7, 3, 5, 9, 1, 4, 6, 8]);
    assert_eq!(w.len(), 17);
}

#[test]
fn column_values_add_up() {
    for trial in 0..300 {
        let mut rng = trial_rng(21, trial);
        let n = rng.gen_range(1..=6);
        let r = rng.gen_range(1..=n.min(4));
        let t = random_tableau(&mut rng, n, r, 3);
        let q = rng.gen_range(1..=4);
        let m = PathMatrix::build(&t, q).unwrap();
        let k = rng.gen_range(1..=3);
        let f: PathFamily = random_family(&mut rng, &m, k);
        let split = column_split_check(&m, &f).unwrap();
        assert!(split.holds(), "{split:?}");
        let ell = family_ell(&m, &f).unwrap();
        for c in &ell.columns {
            let words: Vec<_> = f
                .paths()
                .iter()
                .map(|p| m.column_word(p, c.col).unwrap())
                .collect();
            c.witness.validate(&words).unwrap();
            assert_eq!(c.witness.total_len(), c.value);
        }
    }
}
