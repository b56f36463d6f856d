use super::{Monomial, PolyMap, PolynomialSystem, NUM_POLYNOMIALS};

const NIBBLES: usize = 16;
const PAIRS: usize = NIBBLES * (NIBBLES - 1) / 2;

/// Table-driven evaluator for the whole 64 -> 32 bit map.
///
/// The input word is split into 16 nibbles. Every quadratic form over GF(2)
/// decomposes into terms living inside one nibble (folded together with the
/// linear part into `diag`) and bilinear terms between two nibbles (`cross`,
/// one 256-entry table per unordered nibble pair). Each table entry already
/// holds all 32 output bits, so one evaluation is 136 lookups and XORs.
#[derive(Clone)]
pub struct CompiledSystem {
    constant: u32,
    diag: [[u32; 16]; NIBBLES],
    cross: Box<[[u32; 256]; PAIRS]>,
    term_counts: [usize; NUM_POLYNOMIALS],
}

fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < NIBBLES);
    a * (2 * NIBBLES - a - 1) / 2 + (b - a - 1)
}

impl CompiledSystem {
    pub fn new(system: &PolynomialSystem) -> Self {
        let mut out = CompiledSystem {
            constant: 0,
            diag: [[0; 16]; NIBBLES],
            cross: Box::new([[0; 256]; PAIRS]),
            term_counts: [0; NUM_POLYNOMIALS],
        };
        for (k, poly) in system.polynomials().iter().enumerate() {
            out.term_counts[k] = poly.len();
            let bit = 1u32 << (31 - k);
            for term in poly.terms() {
                out.add_term(term, bit);
            }
        }
        out
    }

    fn add_term(&mut self, term: Monomial, bit: u32) {
        match term {
            Monomial::One => self.constant ^= bit,
            Monomial::Linear(v) => {
                let pos = v.bit_position() as usize;
                let (n, m) = (pos / 4, 1 << (pos % 4));
                for val in (0..16).filter(|val| val & m != 0) {
                    self.diag[n][val] ^= bit;
                }
            }
            Monomial::Quadratic(u, v) => {
                let (pu, pv) = (u.bit_position() as usize, v.bit_position() as usize);
                let (nu, mu) = (pu / 4, 1usize << (pu % 4));
                let (nv, mv) = (pv / 4, 1usize << (pv % 4));
                if nu == nv {
                    for val in (0..16).filter(|val| val & mu != 0 && val & mv != 0) {
                        self.diag[nu][val] ^= bit;
                    }
                } else {
                    let ((a, ma), (b, mb)) = if nu < nv {
                        ((nu, mu), (nv, mv))
                    } else {
                        ((nv, mv), (nu, mu))
                    };
                    let table = &mut self.cross[pair_index(a, b)];
                    for va in (0..16).filter(|va| va & ma != 0) {
                        for vb in (0..16).filter(|vb| vb & mb != 0) {
                            table[va << 4 | vb] ^= bit;
                        }
                    }
                }
            }
        }
    }

    /// Number of source terms of `y_1 .. y_32`, kept for audit.
    pub fn term_counts(&self) -> &[usize; NUM_POLYNOMIALS] {
        &self.term_counts
    }

    #[inline]
    pub fn eval(&self, x: u64) -> u32 {
        let mut nib = [0usize; NIBBLES];
        for (n, slot) in nib.iter_mut().enumerate() {
            *slot = ((x >> (4 * n)) & 0xf) as usize;
        }
        let mut acc = self.constant;
        let mut pair = 0;
        for a in 0..NIBBLES {
            acc ^= self.diag[a][nib[a]];
            let hi = nib[a] << 4;
            for &lo in &nib[a + 1..] {
                acc ^= self.cross[pair][hi | lo];
                pair += 1;
            }
        }
        acc
    }
}

impl PolyMap for CompiledSystem {
    #[inline]
    fn eval_p(&self, x: u64) -> u32 {
        self.eval(x)
    }
}

impl std::fmt::Debug for CompiledSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CompiledSystem")
            .field("constant", &format_args!("{:#010x}", self.constant))
            .field("term_counts", &self.term_counts)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::synthetic;
    use crate::poly::Var;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_indices_are_dense() {
        let mut seen = [false; PAIRS];
        let mut expected = 0;
        for a in 0..NIBBLES {
            for b in a + 1..NIBBLES {
                let i = pair_index(a, b);
                assert_eq!(i, expected);
                assert!(!seen[i]);
                seen[i] = true;
                expected += 1;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn all_constant_system() {
        let sys = synthetic(|_| vec![Monomial::One]).compile();
        for x in [0, 1, u64::MAX, 0xdead_beef_0bad_f00d] {
            assert_eq!(sys.eval(x), 0xffff_ffff);
        }
    }

    #[test]
    fn single_term_systems_match_oracle() {
        // one quadratic term per output bit, crossing and sharing nibbles
        let sys = synthetic(|k| {
            let i = Var::new(k as u8).unwrap();
            let j = Var::new(65 - k as u8).unwrap();
            vec![Monomial::quadratic(i, j).unwrap_or(Monomial::Linear(i))]
        });
        let compiled = sys.compile();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let x: u64 = rng.random();
            assert_eq!(compiled.eval(x), sys.eval_oracle(x));
        }
    }

    #[test]
    fn shipped_matches_oracle() {
        let sys = PolynomialSystem::shipped();
        let compiled = sys.compile();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let x: u64 = rng.random();
            assert_eq!(compiled.eval(x), sys.eval_oracle(x), "x = {x:#018x}");
        }
        assert_eq!(compiled.eval(0), sys.eval_oracle(0));
        assert_eq!(compiled.eval(u64::MAX), sys.eval_oracle(u64::MAX));
    }

    #[test]
    fn term_counts_recorded() {
        let sys = PolynomialSystem::shipped();
        let compiled = sys.compile();
        for (k, p) in sys.polynomials().iter().enumerate() {
            assert_eq!(compiled.term_counts()[k], p.len());
        }
    }

    #[test]
    fn compile_is_deterministic() {
        let sys = PolynomialSystem::shipped();
        let (a, b) = (sys.compile(), sys.compile());
        assert_eq!(a.constant, b.constant);
        assert_eq!(a.diag, b.diag);
        assert!(a.cross.iter().zip(b.cross.iter()).all(|(x, y)| x == y));
    }
}
