//! Dual matrices whose entries are constant on classes of index pairs.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::numeric::Dense;
use crate::qcomb::{rat_to_f64, BigRat};

/// A matrix with exact entries `class_values[labels[i·cols + j]]`.
#[derive(Debug, Clone)]
pub struct DualMatrix {
    pub rows: usize,
    pub cols: usize,
    pub labels: Vec<u32>,
    pub class_values: Vec<BigRat>,
    /// What the row and column indices enumerate.
    pub row_index: String,
    pub col_index: String,
}

impl DualMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &BigRat {
        &self.class_values[self.labels[i * self.cols + j] as usize]
    }

    pub fn class_counts(&self) -> Vec<u64> {
        let mut c = vec![0u64; self.class_values.len()];
        for &l in &self.labels {
            c[l as usize] += 1;
        }
        c
    }

    /// Σ |entries|.
    pub fn l1(&self) -> BigRat {
        self.class_counts()
            .iter()
            .zip(&self.class_values)
            .fold(BigRat::zero(), |acc, (&c, v)| acc + v.abs() * BigRat::from_integer(c.into()))
    }

    /// Σ entries².
    pub fn frobenius_sq(&self) -> BigRat {
        self.class_counts()
            .iter()
            .zip(&self.class_values)
            .fold(BigRat::zero(), |acc, (&c, v)| acc + v * v * BigRat::from_integer(c.into()))
    }

    /// Sum of the entries in each class.
    pub fn class_sums(&self) -> Vec<BigRat> {
        self.class_counts()
            .iter()
            .zip(&self.class_values)
            .map(|(&c, v)| v * BigRat::from_integer(c.into()))
            .collect()
    }

    pub fn row_sum(&self, i: usize) -> BigRat {
        (0..self.cols).fold(BigRat::zero(), |acc, j| acc + self.entry(i, j))
    }

    pub fn to_dense(&self) -> Dense {
        let vals: Vec<f64> = self.class_values.iter().map(rat_to_f64).collect();
        Dense { rows: self.rows, cols: self.cols, data: self.labels.iter().map(|&l| vals[l as usize]).collect() }
    }
}
