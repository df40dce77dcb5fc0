use std::fmt;
use std::sync::Arc;

use crate::Error;

/// An ordered list of distinct coordinate names. Cheap to clone and share.
///
/// Two charts are equal when their coordinate names agree, so values built on
/// independently constructed but identical charts interoperate.
#[derive(Clone, Eq)]
pub struct Chart {
    inner: Arc<Vec<String>>,
}

impl Chart {
    /// The name `d` is reserved by the expression grammar for basis 1-forms.
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(coords: I) -> Result<Chart, Error> {
        let coords: Vec<String> = coords.into_iter().map(Into::into).collect();
        if coords.is_empty() {
            return Err(Error::BadChart("chart needs at least one coordinate".into()));
        }
        for (i, name) in coords.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::BadChart("empty coordinate name".into()));
            }
            if name == "d" {
                return Err(Error::BadChart("coordinate name `d` is reserved".into()));
            }
            if !name.chars().next().unwrap().is_ascii_alphabetic() && !name.starts_with('_') {
                return Err(Error::BadChart(format!("invalid coordinate name `{name}`")));
            }
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::BadChart(format!("invalid coordinate name `{name}`")));
            }
            if coords[..i].contains(name) {
                return Err(Error::BadChart(format!("duplicate coordinate `{name}`")));
            }
        }
        Ok(Chart {
            inner: Arc::new(coords),
        })
    }

    pub fn dim(&self) -> usize {
        self.inner.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.inner
    }

    pub fn coord_name(&self, i: usize) -> &str {
        &self.inner[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.iter().position(|c| c == name)
    }

    pub fn check_same(&self, other: &Chart) -> Result<(), Error> {
        if self == other {
            Ok(())
        } else {
            Err(Error::chart_mismatch(self, other))
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl std::hash::Hash for Chart {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.hash(state)
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({})", self.inner.join(", "))
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.inner.join(", "))
    }
}
