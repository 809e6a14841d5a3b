use super::{CosetOracle, RootedGraph};
use crate::group_core::{check_gen, generator_name, Gen, GroupError, NormalForm, Word};

/// Schreier graph of a sublattice `K ≤ ℤⁿ`. Cosets are named by the
/// residue of a vector after reduction by the Hermite normal form of `K`.
pub struct LatticeCosetOracle {
    dim: usize,
    /// Echelon rows with positive pivots; entries above each pivot reduced
    /// into `[0, pivot)`.
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    label: String,
}

pub fn lattice_coset_oracle(dim: usize, basis: &[Vec<i64>]) -> Result<LatticeCosetOracle, GroupError> {
    if basis.iter().any(|v| v.len() != dim) {
        return Err(GroupError::Validation(format!(
            "sublattice vectors must have {dim} coordinates"
        )));
    }
    let (rows, pivots) = hermite(dim, basis);
    Ok(LatticeCosetOracle {
        dim,
        rows,
        pivots,
        label: format!("rel(Z^{dim})"),
    })
}

fn hermite(dim: usize, basis: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut rows: Vec<Vec<i64>> = basis.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..dim {
        if top == rows.len() {
            break;
        }
        loop {
            let best = (top..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(rows[top][col]);
                    for j in 0..dim {
                        rows[i][j] -= q * rows[top][j];
                    }
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col] == 0 {
            continue;
        }
        if rows[top][col] < 0 {
            rows[top].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..top {
            let q = rows[i][col].div_euclid(rows[top][col]);
            for j in 0..dim {
                rows[i][j] -= q * rows[top][j];
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

impl LatticeCosetOracle {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Number of cosets, or `None` when the index is infinite.
    pub fn index(&self) -> Option<u64> {
        if self.pivots.len() < self.dim {
            return None;
        }
        Some(
            self.rows
                .iter()
                .zip(&self.pivots)
                .map(|(r, &c)| r[c] as u64)
                .product(),
        )
    }

    pub fn residue(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = v[c].div_euclid(row[c]);
            for j in c..self.dim {
                v[j] -= q * row[j];
            }
        }
        v
    }
}

impl RootedGraph for LatticeCosetOracle {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn root(&self) -> NormalForm {
        NormalForm::Ints(vec![0; self.dim])
    }

    fn label_count(&self) -> usize {
        self.dim
    }

    fn label_names(&self) -> Vec<String> {
        (0..self.dim).map(generator_name).collect()
    }

    fn neighbors(&self, v: &NormalForm) -> Result<Vec<(Gen, NormalForm)>, GroupError> {
        let NormalForm::Ints(x) = v else {
            return Err(GroupError::MalformedForm {
                group: self.label.clone(),
                payload: v.to_string(),
            });
        };
        Ok((0..2 * self.dim)
            .map(|slot| {
                let s = Gen::from_slot(slot);
                let mut y = x.clone();
                y[s.index()] += s.sign();
                (s, NormalForm::Ints(self.residue(&y)))
            })
            .collect())
    }
}

impl CosetOracle for LatticeCosetOracle {
    fn coset_id(&self, w: &Word) -> Result<NormalForm, GroupError> {
        let mut v = vec![0i64; self.dim];
        for s in w.iter() {
            check_gen(s, self.dim)?;
            v[s.index()] += s.sign();
        }
        Ok(NormalForm::Ints(self.residue(&v)))
    }
}
