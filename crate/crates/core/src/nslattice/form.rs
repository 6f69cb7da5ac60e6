use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("product {0} entered twice with different values")]
    Asymmetric(String),
    #[error("product {0} is missing from the table")]
    Missing(String),
    #[error("product {0} is not known")]
    Unknown(String),
    #[error("classes live on different lattices")]
    BasisMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("{0}")]
    Io(String),
}

/// A fully symmetric integer form of fixed arity. Entries are keyed by the
/// sorted index tuple; `None` marks a product the table leaves open.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Table {
    basis: Arc<[String]>,
    entries: BTreeMap<Vec<usize>, Option<i64>>,
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for m in multisets(n, k - 1) {
        let start = m.last().copied().unwrap_or(0);
        for i in start..n {
            let mut v = m.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

impl Table {
    fn parse(text: &str, kind: &str, arity: usize) -> Result<Self, LatticeError> {
        let mut basis: Option<Arc<[String]>> = None;
        let mut entries = BTreeMap::new();
        let mut seen_kind = false;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |msg: &str| LatticeError::Parse { line, msg: msg.to_string() };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            match words.next() {
                Some("kind") => {
                    if words.next() != Some(kind) {
                        return Err(err(&format!("expected kind {kind}")));
                    }
                    seen_kind = true;
                }
                Some("basis") => {
                    let b: Vec<String> = words.map(str::to_string).collect();
                    if b.is_empty() {
                        return Err(err("empty basis"));
                    }
                    basis = Some(b.into());
                }
                _ => {
                    let b = basis.as_ref().ok_or_else(|| err("product before basis"))?;
                    let (lhs, rhs) = content.split_once('=').ok_or_else(|| err("missing '='"))?;
                    let names: Vec<&str> = lhs.split_whitespace().collect();
                    if names.len() != arity {
                        return Err(err(&format!("expected {arity} factors")));
                    }
                    let mut key = names
                        .iter()
                        .map(|s| {
                            b.iter().position(|g| g == s).ok_or_else(|| LatticeError::UnknownGenerator(s.to_string()))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    key.sort();
                    let value = match rhs.trim() {
                        "?" => None,
                        v => Some(v.parse::<i64>().map_err(|_| err("value is not an integer or '?'"))?),
                    };
                    if let Some(old) = entries.insert(key, value) {
                        if old != value {
                            return Err(LatticeError::Asymmetric(names.join("·")));
                        }
                    }
                }
            }
        }
        if !seen_kind {
            return Err(LatticeError::Parse { line: 0, msg: format!("missing 'kind {kind}'") });
        }
        let basis = basis.ok_or(LatticeError::Parse { line: 0, msg: "missing basis".into() })?;
        let table = Table { basis, entries };
        for key in multisets(table.basis.len(), arity) {
            if !table.entries.contains_key(&key) {
                return Err(LatticeError::Missing(table.render(&key)));
            }
        }
        Ok(table)
    }

    fn render(&self, key: &[usize]) -> String {
        key.iter().map(|&i| self.basis[i].as_str()).collect::<Vec<_>>().join("·")
    }

    fn entry(&self, idx: &[usize]) -> Option<i64> {
        let mut key = idx.to_vec();
        key.sort();
        self.entries[&key]
    }

    fn check(&self, d: &DivisorClass) -> Result<(), LatticeError> {
        if d.basis != self.basis {
            return Err(LatticeError::BasisMismatch);
        }
        Ok(())
    }

    /// Multilinear expansion; an open entry is an error only when it is hit
    /// with a nonzero coefficient.
    fn evaluate(&self, ds: &[&DivisorClass]) -> Result<i64, LatticeError> {
        for d in ds {
            self.check(d)?;
        }
        let n = self.basis.len();
        let mut total = 0i64;
        let mut idx = vec![0usize; ds.len()];
        loop {
            let c: i64 = idx.iter().zip(ds).map(|(&i, d)| d.coeffs[i]).product();
            if c != 0 {
                let v = self.entry(&idx).ok_or_else(|| LatticeError::Unknown(self.render(&idx)))?;
                total += c * v;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(total);
                }
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn class(&self, name: &str, coeffs: &[i64]) -> Result<DivisorClass, LatticeError> {
        if coeffs.len() != self.basis.len() {
            return Err(LatticeError::Length { expected: self.basis.len(), got: coeffs.len() });
        }
        Ok(DivisorClass { name: name.to_string(), basis: self.basis.clone(), coeffs: coeffs.to_vec() })
    }

    fn generator(&self, g: &str) -> Result<DivisorClass, LatticeError> {
        let i = self.basis.iter().position(|b| b == g).ok_or_else(|| LatticeError::UnknownGenerator(g.to_string()))?;
        let mut c = vec![0; self.basis.len()];
        c[i] = 1;
        self.class(g, &c)
    }
}

/// An integer class over a named basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub name: String,
    basis: Arc<[String]>,
    coeffs: Vec<i64>,
}

impl DivisorClass {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    fn zip(&self, o: &Self, f: impl Fn(i64, i64) -> i64) -> Result<Self, LatticeError> {
        if self.basis != o.basis {
            return Err(LatticeError::BasisMismatch);
        }
        Ok(DivisorClass {
            name: String::new(),
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self, LatticeError> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, LatticeError> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass {
            name: String::new(),
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `3H - 3C + 4F` style rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (&c, g) in self.coeffs.iter().zip(self.basis.iter()) {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let term = if mag == 1 { g.clone() } else { format!("{mag}{g}") };
            match (s.is_empty(), c < 0) {
                (true, false) => s.push_str(&term),
                (true, true) => s.push_str(&format!("-{term}")),
                (false, false) => s.push_str(&format!(" + {term}")),
                (false, true) => s.push_str(&format!(" - {term}")),
            }
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

macro_rules! form_type {
    ($name:ident, $kind:literal, $arity:literal) => {
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name(Table);

        impl $name {
            /// Reads a table; every product must be listed, symmetric
            /// repeats must agree.
            pub fn parse(text: &str) -> Result<Self, LatticeError> {
                Table::parse(text, $kind, $arity).map($name)
            }

            pub fn load(path: &Path) -> Result<Self, LatticeError> {
                let text = std::fs::read_to_string(path).map_err(|e| LatticeError::Io(e.to_string()))?;
                Self::parse(&text)
            }

            pub fn basis(&self) -> &[String] {
                &self.0.basis
            }

            pub fn class(&self, name: &str, coeffs: &[i64]) -> Result<DivisorClass, LatticeError> {
                self.0.class(name, coeffs)
            }

            pub fn generator(&self, g: &str) -> Result<DivisorClass, LatticeError> {
                self.0.generator(g)
            }

            pub fn zero(&self) -> DivisorClass {
                self.0.class("0", &vec![0; self.0.basis.len()]).expect("length")
            }

            /// The table entry for the given generators, `None` when open.
            pub fn entry(&self, gens: &[&str]) -> Result<Option<i64>, LatticeError> {
                let idx = gens
                    .iter()
                    .map(|g| {
                        self.0
                            .basis
                            .iter()
                            .position(|b| b == g)
                            .ok_or_else(|| LatticeError::UnknownGenerator(g.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if idx.len() != $arity {
                    return Err(LatticeError::Length { expected: $arity, got: idx.len() });
                }
                Ok(self.0.entry(&idx))
            }
        }
    };
}

form_type!(TripleForm, "triple", 3);
form_type!(SurfaceForm, "surface", 2);

impl TripleForm {
    pub fn triple_product(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Result<i64, LatticeError> {
        self.0.evaluate(&[a, b, c])
    }

    pub fn cube(&self, d: &DivisorClass) -> Result<i64, LatticeError> {
        self.triple_product(d, d, d)
    }
}

impl SurfaceForm {
    pub fn pairing(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, LatticeError> {
        self.0.evaluate(&[a, b])
    }

    /// A diagonal form with the given self-intersections, for blow-ups.
    pub fn diagonal(basis: &[String], squares: &[i64]) -> Result<Self, LatticeError> {
        if basis.len() != squares.len() {
            return Err(LatticeError::Length { expected: basis.len(), got: squares.len() });
        }
        let mut text = String::from("kind surface\nbasis");
        for b in basis {
            text.push(' ');
            text.push_str(b);
        }
        text.push('\n');
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let v = if i == j { squares[i] } else { 0 };
                text.push_str(&format!("{} {} = {v}\n", basis[i], basis[j]));
            }
        }
        Self::parse(&text)
    }
}
