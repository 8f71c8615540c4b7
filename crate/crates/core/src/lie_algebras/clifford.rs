//! Real Clifford generators and the spin embeddings `spin(7) ⊂ so(8)`,
//! `spin(9) ⊂ so(16)`.
//!
//! Generators are Kronecker products of the real 2x2 matrices
//! `I`, `E = [[0,-1],[1,0]]`, `X = [[0,1],[1,0]]`, `Z = [[1,0],[0,-1]]`.
//! Such a product is skew exactly when it contains an odd number of `E`
//! factors, and two products anticommute exactly when they differ by an odd
//! number of non-identity positions. A depth-first search over products in
//! lexicographic order picks the first mutually anticommuting family, so the
//! output is fixed.
//!
//! `Cl(0,7)` (generators squaring to `-1`) has a real 8-dimensional module,
//! but nine anticommuting real 16x16 matrices squaring to `-1` do not exist.
//! For `n = 9` the generators therefore square to `+1` (real symmetric); the
//! spin algebra `span{γ_i γ_j}` is skew either way.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Letter {
    I,
    E,
    X,
    Z,
}

const LETTERS: [Letter; 4] = [Letter::I, Letter::E, Letter::X, Letter::Z];

impl Letter {
    fn matrix(self) -> DMatrix<f64> {
        let v = match self {
            Letter::I => [1.0, 0.0, 0.0, 1.0],
            Letter::E => [0.0, -1.0, 1.0, 0.0],
            Letter::X => [0.0, 1.0, 1.0, 0.0],
            Letter::Z => [1.0, 0.0, 0.0, -1.0],
        };
        DMatrix::from_row_slice(2, 2, &v)
    }
}

fn word(index: usize, len: usize) -> Vec<Letter> {
    (0..len)
        .rev()
        .map(|p| LETTERS[(index >> (2 * p)) & 3])
        .collect()
}

fn anticommute(a: &[Letter], b: &[Letter]) -> bool {
    a.iter()
        .zip(b)
        .filter(|(x, y)| x != y && **x != Letter::I && **y != Letter::I)
        .count()
        % 2
        == 1
}

fn search(
    candidates: &[Vec<Letter>],
    start: usize,
    need: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == need {
        return true;
    }
    for c in start..candidates.len() {
        if chosen
            .iter()
            .all(|&k| anticommute(&candidates[k], &candidates[c]))
        {
            chosen.push(c);
            if search(candidates, c + 1, need, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn kronecker_word(w: &[Letter]) -> DMatrix<f64> {
    w.iter()
        .skip(1)
        .fold(w[0].matrix(), |acc, l| acc.kronecker(&l.matrix()))
}

/// Anticommuting real generators with `γ_i γ_j + γ_j γ_i = 2 * signature * δ_ij * Id`.
#[derive(Debug, Clone)]
pub struct GammaMatrices {
    pub signature: f64,
    pub gammas: Vec<DMatrix<f64>>,
}

impl GammaMatrices {
    pub fn size(&self) -> usize {
        self.gammas[0].nrows()
    }

    pub fn anticommutation_residual(&self) -> f64 {
        let n = self.size();
        let id = DMatrix::<f64>::identity(n, n);
        let mut worst = 0.0f64;
        for (i, a) in self.gammas.iter().enumerate() {
            for (j, b) in self.gammas.iter().enumerate() {
                let target = if i == j { &id * (2.0 * self.signature) } else { &id * 0.0 };
                worst = worst.max((a * b + b * a - target).amax());
            }
        }
        worst
    }
}

/// `n = 7`: seven skew 8x8 generators squaring to `-1`.
/// `n = 9`: nine symmetric 16x16 generators squaring to `+1`.
pub fn gamma_matrices(n: usize) -> Result<GammaMatrices> {
    let (len, skew) = match n {
        7 => (3, true),
        9 => (4, false),
        _ => {
            return Err(Error::InvalidInput(format!(
                "gamma matrices are provided for n = 7 and n = 9, not {n}"
            )))
        }
    };
    let candidates: Vec<Vec<Letter>> = (1..(1usize << (2 * len)))
        .map(|i| word(i, len))
        .filter(|w| (w.iter().filter(|&&l| l == Letter::E).count() % 2 == 1) == skew)
        .collect();
    let mut chosen = Vec::new();
    if !search(&candidates, 0, n, &mut chosen) {
        return Err(Error::InternalConsistency {
            what: format!("no anticommuting family of {n} generators"),
            residual: f64::INFINITY,
        });
    }
    Ok(GammaMatrices {
        signature: if skew { -1.0 } else { 1.0 },
        gammas: chosen.iter().map(|&c| kronecker_word(&candidates[c])).collect(),
    })
}

/// The image of `so(n)` inside `so(8)` or `so(16)` under the spin representation.
#[derive(Debug, Clone)]
pub struct SpinEmbedding {
    pub n: usize,
    pub gammas: GammaMatrices,
    /// Image of the standard `so(n)` basis element `E_ji - E_ij` (`i < j`,
    /// lexicographic), i.e. `-signature/2 * γ_i γ_j`. This choice of sign makes
    /// the map a Lie algebra homomorphism.
    pub generators: Vec<DMatrix<f64>>,
}

impl SpinEmbedding {
    pub fn ambient_size(&self) -> usize {
        self.gammas.size()
    }

    pub fn generator(&self, i: usize, j: usize) -> &DMatrix<f64> {
        assert!(i < j && j < self.n);
        let index = i * (2 * self.n - i - 1) / 2 + (j - i - 1);
        &self.generators[index]
    }
}

pub fn spin_embedding(n: usize) -> Result<SpinEmbedding> {
    let gammas = gamma_matrices(n)?;
    let s = -0.5 * gammas.signature;
    let mut generators = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            generators.push(&gammas.gammas[i] * &gammas.gammas[j] * s);
        }
    }
    Ok(SpinEmbedding {
        n,
        gammas,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutation_holds() {
        for n in [7, 9] {
            let g = gamma_matrices(n).unwrap();
            assert_eq!(g.gammas.len(), n);
            assert!(g.anticommutation_residual() < 1e-14);
        }
        assert_eq!(gamma_matrices(7).unwrap().size(), 8);
        assert_eq!(gamma_matrices(9).unwrap().size(), 16);
    }

    #[test]
    fn unsupported_n() {
        assert!(gamma_matrices(8).is_err());
        assert!(spin_embedding(5).is_err());
    }

    #[test]
    fn generators_are_skew() {
        for n in [7, 9] {
            let s = spin_embedding(n).unwrap();
            assert_eq!(s.generators.len(), n * (n - 1) / 2);
            for g in &s.generators {
                assert!((g + g.transpose()).amax() < 1e-14);
            }
        }
    }

    #[test]
    fn generator_index_matches_order() {
        let s = spin_embedding(7).unwrap();
        let mut k = 0;
        for i in 0..7 {
            for j in (i + 1)..7 {
                assert_eq!(s.generator(i, j), &s.generators[k]);
                k += 1;
            }
        }
    }
}
