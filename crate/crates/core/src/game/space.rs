use std::collections::HashMap;

use super::GameError;

/// Ordered, interned identifiers. Indices follow declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Labels {
    pub fn new<I, S>(names: I) -> Result<Self, GameError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(GameError::EmptySpace);
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), i).is_some() {
                return Err(GameError::DuplicateId(name.clone()));
            }
        }
        Ok(Self { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, GameError> {
        self.index(name)
            .ok_or_else(|| GameError::UnknownId(name.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Keeps the given indices, in the given order.
    pub fn subset(&self, keep: &[usize]) -> Result<Self, GameError> {
        Labels::new(keep.iter().map(|&i| self.names[i].clone()))
    }
}

/// Mixed-radix indexing of a cartesian product; the first coordinate is most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl ProductSpace {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut strides = vec![1; sizes.len()];
        let mut len = 1usize;
        for k in (0..sizes.len()).rev() {
            strides[k] = len;
            len = len.checked_mul(sizes[k]).expect("product space too large");
        }
        Self {
            sizes,
            strides,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dims(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn stride(&self, k: usize) -> usize {
        self.strides[k]
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.sizes.len());
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coord(&self, index: usize, k: usize) -> usize {
        (index / self.strides[k]) % self.sizes[k]
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        (0..self.sizes.len())
            .map(|k| self.coord(index, k))
            .collect()
    }

    /// Index of the profile obtained by replacing coordinate `k` with `value`.
    pub fn with_coord(&self, index: usize, k: usize, value: usize) -> usize {
        let old = self.coord(index, k);
        index - old * self.strides[k] + value * self.strides[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len).map(move |i| self.coords(i))
    }
}
