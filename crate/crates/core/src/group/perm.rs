use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., m-1}`, written 1-based in cycle notation.
///
/// Composition follows right actions: `p.then(q)` applies `p` first, so a
/// point `x` goes to `q(p(x))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidElement(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn then(&self, other: &Self) -> Self {
        Self {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)` or `(1.2.3)`;
    /// `()` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let bad = || Error::InvalidElement(text.to_string());
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let body = &body[..body_end - 1];
            let points: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == '.')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(p) if p >= 1 && p <= degree => Ok(p - 1),
                    _ => Err(bad()),
                })
                .collect::<Result<_>>()?;
            for (i, &p) in points.iter().enumerate() {
                if std::mem::replace(&mut moved[p], true) {
                    return Err(bad());
                }
                images[p] = points[(i + 1) % points.len()];
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Ok(Self { images })
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    fn write_cycles(&self, f: &mut fmt::Formatter<'_>, sep: &str) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(sep))?;
        }
        Ok(())
    }

    /// Cycle notation without whitespace, usable inside vertex ids.
    pub fn compact(&self) -> String {
        struct Compact<'a>(&'a Permutation);
        impl fmt::Display for Compact<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_cycles(f, ".")
            }
        }
        Compact(self).to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_cycles(f, " ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.compact(), "(1.2.3)(4.5)");
        assert_eq!(Permutation::parse(&p.compact(), 5).unwrap(), p);
        assert!(Permutation::parse("()", 3).unwrap().is_identity());
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn rejects_malformed() {
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse("1 2", 3).is_err());
        assert!(Permutation::parse("", 3).is_err());
    }

    #[test]
    fn right_action_composition() {
        let a = Permutation::parse("(1 2)", 3).unwrap();
        let b = Permutation::parse("(2 3)", 3).unwrap();
        // 1 -> 2 under a, then 2 -> 3 under b
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }
}
