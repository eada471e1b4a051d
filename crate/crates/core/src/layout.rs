//! Position-dependent coin layouts.
//!
//! A layout is a flat array of [`CoinLabel`]s over the sites `x ∈ [-L, L]`,
//! stored at index `x + L`, together with the angle bound to each label.
//! The Cantor layout of generation `g` is obtained by applying
//! `1 → 1 2 1`, `2 → 2 2 2` to the single symbol `1`, `g` times.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};

/// Which of the two coins sits on a site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum CoinLabel {
    /// The minority coin, angle `theta1`.
    Type1 = 1,
    /// The bulk coin, angle `theta2`.
    Type2 = 2,
}

impl CoinLabel {
    pub fn as_char(self) -> char {
        match self {
            CoinLabel::Type1 => '1',
            CoinLabel::Type2 => '2',
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            CoinLabel::Type1 => CoinLabel::Type2,
            CoinLabel::Type2 => CoinLabel::Type1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutKind {
    Cantor {
        generation: u32,
    },
    Homogeneous,
    /// Type-2 bulk with two type-1 scatterers at `±(3^(g-1)+1)/2`, or the
    /// complement when `swapped`.
    TwoScatter {
        generation: u32,
        swapped: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoinLayout {
    labels: Arc<[CoinLabel]>,
    kind: LayoutKind,
    theta1: f64,
    theta2: f64,
}

/// `3^generation`, or a size error.
pub fn cantor_len(generation: u32) -> Result<usize> {
    3usize.checked_pow(generation).ok_or(Error::SizeOverflow { generation })
}

/// One application of the substitution `1 → 121`, `2 → 222`.
pub fn substitute(labels: &[CoinLabel]) -> Vec<CoinLabel> {
    let mut out = Vec::with_capacity(labels.len() * 3);
    for &label in labels {
        match label {
            CoinLabel::Type1 => out.extend_from_slice(&[CoinLabel::Type1, CoinLabel::Type2, CoinLabel::Type1]),
            CoinLabel::Type2 => out.extend_from_slice(&[CoinLabel::Type2; 3]),
        }
    }
    out
}

/// Offset of the type-1 coins nearest the origin in the Cantor layout of
/// `generation >= 1`: `(3^(g-1) + 1) / 2`.
pub fn scatter_offset(generation: u32) -> Result<usize> {
    if generation == 0 {
        return Err(Error::NoScatterSites);
    }
    Ok(cantor_len(generation - 1)?.div_ceil(2))
}

impl CoinLayout {
    fn from_labels(labels: Vec<CoinLabel>, kind: LayoutKind) -> Self {
        debug_assert!(labels.len() % 2 == 1);
        Self { labels: labels.into(), kind, theta1: FRAC_PI_4, theta2: FRAC_PI_4 }
    }

    /// Generation-`g` Cantor sequence, centred so the middle site is `x = 0`.
    pub fn cantor(generation: u32) -> Result<Self> {
        let len = cantor_len(generation)?;
        let mut labels = Vec::with_capacity(len);
        labels.push(CoinLabel::Type1);
        for _ in 0..generation {
            labels = substitute(&labels);
        }
        debug_assert_eq!(labels.len(), len);
        Ok(Self::from_labels(labels, LayoutKind::Cantor { generation }))
    }

    /// `2L + 1` type-2 sites.
    pub fn homogeneous(half_width: usize) -> Self {
        Self::from_labels(vec_of(CoinLabel::Type2, 2 * half_width + 1), LayoutKind::Homogeneous)
    }

    /// Same length as the Cantor layout of `generation`, type-2 everywhere
    /// except the two sites where the Cantor layout has its innermost type-1
    /// coins.
    pub fn two_scatter(generation: u32) -> Result<Self> {
        Self::scatter(generation, false)
    }

    /// Literal alternative: type-1 everywhere except type-2 at the two
    /// scatter sites.
    pub fn two_scatter_swapped(generation: u32) -> Result<Self> {
        Self::scatter(generation, true)
    }

    fn scatter(generation: u32, swapped: bool) -> Result<Self> {
        let offset = scatter_offset(generation)?;
        let len = cantor_len(generation)?;
        let half_width = len / 2;
        let (bulk, defect) =
            if swapped { (CoinLabel::Type1, CoinLabel::Type2) } else { (CoinLabel::Type2, CoinLabel::Type1) };
        let mut labels = vec_of(bulk, len);
        labels[half_width - offset] = defect;
        labels[half_width + offset] = defect;
        Ok(Self::from_labels(labels, LayoutKind::TwoScatter { generation, swapped }))
    }

    /// Rebinds the label angles; the label array is shared, not copied.
    pub fn with_angles(&self, theta1: f64, theta2: f64) -> Self {
        Self { labels: Arc::clone(&self.labels), kind: self.kind, theta1, theta2 }
    }

    /// Copy of the layout with one site relabelled. The kind is kept, so the
    /// result can be fed to checks that expect e.g. a Cantor layout.
    pub fn with_label(&self, x: i64, label: CoinLabel) -> Result<Self> {
        let idx = self.index_of(x)?;
        let mut labels = self.labels.to_vec();
        labels[idx] = label;
        Ok(Self { labels: labels.into(), kind: self.kind, theta1: self.theta1, theta2: self.theta2 })
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn generation(&self) -> Option<u32> {
        match self.kind {
            LayoutKind::Cantor { generation } => Some(generation),
            _ => None,
        }
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn half_width(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels indexed by `x + L`.
    pub fn labels(&self) -> &[CoinLabel] {
        &self.labels
    }

    fn index_of(&self, x: i64) -> Result<usize> {
        let half_width = self.half_width();
        let idx = x + half_width as i64;
        if idx < 0 || idx as usize >= self.labels.len() {
            return Err(Error::PositionOutOfRange { x, half_width });
        }
        Ok(idx as usize)
    }

    pub fn label_at(&self, x: i64) -> Result<CoinLabel> {
        self.index_of(x).map(|i| self.labels[i])
    }

    pub fn angle_of(&self, label: CoinLabel) -> f64 {
        match label {
            CoinLabel::Type1 => self.theta1,
            CoinLabel::Type2 => self.theta2,
        }
    }

    pub fn angle_at(&self, x: i64) -> Result<f64> {
        self.label_at(x).map(|l| self.angle_of(l))
    }

    pub fn count(&self, label: CoinLabel) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    pub fn is_palindrome(&self) -> bool {
        self.labels.iter().eq(self.labels.iter().rev())
    }

    /// `min |x|` over the type-1 sites.
    pub fn nearest_type1_offset(&self) -> Result<usize> {
        let half_width = self.half_width();
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == CoinLabel::Type1)
            .map(|(i, _)| i.abs_diff(half_width))
            .min()
            .ok_or(Error::NoType1Coin)
    }

    /// Whether one substitution of the previous generation reproduces this
    /// layout exactly.
    pub fn verify_self_similarity(&self) -> Result<bool> {
        let generation = match self.kind {
            LayoutKind::Cantor { generation } if generation >= 1 => generation,
            _ => return Err(Error::NotCantor),
        };
        let parent = Self::cantor(generation - 1)?;
        Ok(substitute(parent.labels()) == *self.labels)
    }

    /// One `1`/`2` character per site, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s: String = self.labels.iter().map(|l| l.as_char()).collect();
        s.push('\n');
        s
    }
}

fn vec_of(label: CoinLabel, len: usize) -> Vec<CoinLabel> {
    alloc::vec![label; len]
}
