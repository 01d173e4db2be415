use std::fmt;

use super::CrossedError;

/// A freely reduced word in an alphabet of `alphabet` generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    alphabet: usize,
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn empty(alphabet: usize) -> Self {
        FreeWord { alphabet, letters: Vec::new() }
    }

    pub fn generator(alphabet: usize, g: usize) -> Result<Self, CrossedError> {
        Self::new(alphabet, vec![(g, 1)])
    }

    /// Reduces the letters; exponents must be `±1`.
    pub fn new(alphabet: usize, letters: Vec<(usize, i8)>) -> Result<Self, CrossedError> {
        if let Some(&(g, e)) = letters.iter().find(|(g, e)| *g >= alphabet || (*e != 1 && *e != -1)) {
            return Err(CrossedError::BadLetter { generator: g, exponent: e, alphabet });
        }
        let mut w = FreeWord { alphabet, letters: Vec::with_capacity(letters.len()) };
        for l in letters {
            w.push(l);
        }
        Ok(w)
    }

    /// `a^n` for a single generator.
    pub fn power(alphabet: usize, g: usize, n: i64) -> Result<Self, CrossedError> {
        let e = if n >= 0 { 1 } else { -1 };
        Self::new(alphabet, vec![(g, e); n.unsigned_abs() as usize])
    }

    fn push(&mut self, (g, e): (usize, i8)) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check(&self, other: &FreeWord) -> Result<(), CrossedError> {
        if self.alphabet != other.alphabet {
            return Err(CrossedError::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord, CrossedError> {
        self.check(other)?;
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        Ok(w)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { alphabet: self.alphabet, letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    /// `w^v = v⁻¹ w v`
    pub fn conjugate(&self, v: &FreeWord) -> Result<FreeWord, CrossedError> {
        v.inverse().mul(self)?.mul(v)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|&(g, e)| if e == 1 { format!("a{g}") } else { format!("a{g}^-1") }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A word in `ρ₂`, free on pairs `(x, α)` with `x ∈ E₂`, `α ∈ ρ₁`; the
/// letter `(x, α)` stands for `x^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rho2Word {
    e1: usize,
    e2: usize,
    letters: Vec<(usize, FreeWord, i8)>,
}

impl Rho2Word {
    pub fn empty(e1: usize, e2: usize) -> Self {
        Rho2Word { e1, e2, letters: Vec::new() }
    }

    pub fn generator(e1: usize, e2: usize, x: usize) -> Result<Self, CrossedError> {
        Self::letter(e2, x, FreeWord::empty(e1), 1)
    }

    /// `(x^α)^ε`
    pub fn letter(e2: usize, x: usize, alpha: FreeWord, exponent: i8) -> Result<Self, CrossedError> {
        if x >= e2 || (exponent != 1 && exponent != -1) {
            return Err(CrossedError::BadLetter { generator: x, exponent, alphabet: e2 });
        }
        Ok(Rho2Word { e1: alpha.alphabet(), e2, letters: vec![(x, alpha, exponent)] })
    }

    pub fn letters(&self) -> &[(usize, FreeWord, i8)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push(&mut self, l: (usize, FreeWord, i8)) {
        if let Some(last) = self.letters.last() {
            if last.0 == l.0 && last.1 == l.1 && last.2 == -l.2 {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(l);
    }

    pub fn mul(&self, other: &Rho2Word) -> Result<Rho2Word, CrossedError> {
        if self.e1 != other.e1 || self.e2 != other.e2 {
            return Err(CrossedError::AlphabetMismatch);
        }
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.clone());
        }
        Ok(w)
    }

    pub fn inverse(&self) -> Rho2Word {
        let letters = self.letters.iter().rev().map(|(x, a, e)| (*x, a.clone(), -e)).collect();
        Rho2Word { e1: self.e1, e2: self.e2, letters }
    }

    /// The right action `(x^α)^β = x^{αβ}` letterwise.
    pub fn act(&self, beta: &FreeWord) -> Result<Rho2Word, CrossedError> {
        let mut w = Rho2Word::empty(self.e1, self.e2);
        for (x, a, e) in &self.letters {
            w.push((*x, a.mul(beta)?, *e));
        }
        Ok(w)
    }

    /// `∂(x^α) = α⁻¹ f(x) α`
    pub fn boundary(&self, f: &[FreeWord]) -> Result<FreeWord, CrossedError> {
        let mut out = FreeWord::empty(self.e1);
        for (x, a, e) in &self.letters {
            let fx = f[*x].conjugate(a)?;
            out = out.mul(&if *e == 1 { fx } else { fx.inverse() })?;
        }
        Ok(out)
    }
}

impl fmt::Display for Rho2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(x, a, e)| {
                let sign = if *e == 1 { "+" } else { "-" };
                if a.is_empty() {
                    format!("{sign}x{x}")
                } else {
                    format!("{sign}x{x}^({a})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `⟨ξ, η⟩ = −ξ − η + ξ + η^{∂ξ}`
pub fn peiffer_commutator(xi: &Rho2Word, eta: &Rho2Word, f: &[FreeWord]) -> Result<Rho2Word, CrossedError> {
    let d = xi.boundary(f)?;
    xi.inverse().mul(&eta.inverse())?.mul(xi)?.mul(&eta.act(&d)?)
}
