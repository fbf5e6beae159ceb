//! Shared cache of cross-Gramian rows with parallel block assembly.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use gensamp_core::bases::{BasisFamily, BasisKind};
use gensamp_core::sections::{DirectSource, SamplingScheme, SectionSource};
use gensamp_core::C64;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct RowKey {
    family: (u8, u32, u64),
    epsilon: u64,
    row: usize,
}

impl RowKey {
    fn new(family: &BasisFamily, scheme: &SamplingScheme, row: usize) -> Self {
        let family = match family.kind() {
            BasisKind::Haar { width } => (0, width, 0),
            BasisKind::Legendre => (1, 0, 0),
            BasisKind::FourierExp { spacing } => (2, 0, spacing.to_bits()),
        };
        Self {
            family,
            epsilon: scheme.epsilon().to_bits(),
            row,
        }
    }
}

/// Rows are stored from the first column up to the widest request seen so
/// far. Values come from the closed forms, so cached and direct assembly are
/// bit-identical.
#[derive(Debug, Default)]
pub struct RowCache {
    rows: RwLock<HashMap<RowKey, Arc<Vec<C64>>>>,
}

impl RowCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.rows.write().expect("cache lock").clear();
    }

    fn row(&self, family: &BasisFamily, scheme: &SamplingScheme, row: usize, width: usize) -> Arc<Vec<C64>> {
        let key = RowKey::new(family, scheme, row);
        if let Some(r) = self.rows.read().expect("cache lock").get(&key) {
            if r.len() >= width {
                return Arc::clone(r);
            }
        }
        let mut values = vec![C64::new(0.0, 0.0); width];
        DirectSource.fill_row(family, scheme, row, 0, &mut values);
        let values = Arc::new(values);
        let mut guard = self.rows.write().expect("cache lock");
        let slot = guard.entry(key).or_insert_with(|| Arc::clone(&values));
        if slot.len() < width {
            *slot = Arc::clone(&values);
        }
        Arc::clone(slot)
    }
}

impl SectionSource for RowCache {
    fn fill_row(&self, family: &BasisFamily, scheme: &SamplingScheme, row: usize, col_offset: usize, out: &mut [C64]) {
        let r = self.row(family, scheme, row, col_offset + out.len());
        out.copy_from_slice(&r[col_offset..col_offset + out.len()]);
    }

    fn fill_block(&self, family: &BasisFamily, scheme: &SamplingScheme, rows: usize, col_offset: usize, out: &mut [C64]) {
        if rows == 0 || out.is_empty() {
            return;
        }
        let cols = out.len() / rows;
        out.par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, chunk)| self.fill_row(family, scheme, i + 1, col_offset, chunk));
    }
}

/// Parallel assembly without caching, for one-off large sections.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParallelSource;

impl SectionSource for ParallelSource {
    fn fill_row(&self, family: &BasisFamily, scheme: &SamplingScheme, row: usize, col_offset: usize, out: &mut [C64]) {
        DirectSource.fill_row(family, scheme, row, col_offset, out)
    }

    fn fill_block(&self, family: &BasisFamily, scheme: &SamplingScheme, rows: usize, col_offset: usize, out: &mut [C64]) {
        if rows == 0 || out.is_empty() {
            return;
        }
        let cols = out.len() / rows;
        out.par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, chunk)| DirectSource.fill_row(family, scheme, i + 1, col_offset, chunk));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gensamp_core::sections::{build_section, build_section_with};

    #[test]
    fn cached_sections_are_bit_identical() {
        let f = BasisFamily::haar();
        let s = SamplingScheme::for_family(0.5, &f).unwrap();
        let cache = RowCache::new();
        let narrow = build_section_with(&cache, &f, &s, 30, 5, 0).unwrap();
        assert_eq!(cache.len(), 30);
        let wide = build_section_with(&cache, &f, &s, 40, 12, 3).unwrap();
        assert_eq!(narrow, build_section(&f, &s, 30, 5, 0).unwrap());
        assert_eq!(wide.block(), build_section(&f, &s, 40, 12, 3).unwrap().block());
        let par = build_section_with(&ParallelSource, &f, &s, 40, 12, 3).unwrap();
        assert_eq!(par.block(), wide.block());
        // other spacing, other rows
        let s2 = SamplingScheme::for_family(0.25, &f).unwrap();
        build_section_with(&cache, &f, &s2, 10, 2, 0).unwrap();
        assert_eq!(cache.len(), 50);
    }
}
