use std::fmt;

use crate::laurent::LaurentPolynomial;

/// One divided-power factor of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `E_i^{(a)}`.
    Chevalley { i: usize, a: u32 },
    /// `E_{i,j}^{(a)}` for the root element of the interval `[i..j]`, `i < j`.
    Root { i: usize, j: usize, a: u32 },
    /// `bar(E_{i,j})^{(a)}`.
    BarRoot { i: usize, j: usize, a: u32 },
}

impl Factor {
    pub fn exponent(&self) -> u32 {
        match *self {
            Factor::Chevalley { a, .. } | Factor::Root { a, .. } | Factor::BarRoot { a, .. } => a,
        }
    }

    fn bar(&self) -> Factor {
        match *self {
            Factor::Chevalley { i, a } => Factor::Chevalley { i, a },
            Factor::Root { i, j, a } => Factor::BarRoot { i, j, a },
            Factor::BarRoot { i, j, a } => Factor::Root { i, j, a },
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, a) = match *self {
            Factor::Chevalley { i, a } => (format!("E{i}"), a),
            Factor::Root { i, j, a } => (format!("E{i},{j}"), a),
            Factor::BarRoot { i, j, a } => (format!("bar(E{i},{j})"), a),
        };
        if a == 1 {
            f.write_str(&name)
        } else {
            write!(f, "{name}^({a})")
        }
    }
}

/// `scalar * F_1 F_2 ... F_k`, evaluated left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub scalar: LaurentPolynomial,
    factors: Vec<Factor>,
}

impl Default for GeneratorWord {
    fn default() -> Self {
        Self::one()
    }
}

impl GeneratorWord {
    /// The empty word, evaluating to 1.
    pub fn one() -> Self {
        Self {
            scalar: LaurentPolynomial::one(),
            factors: Vec::new(),
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = Factor>) -> Self {
        let mut w = Self::one();
        for f in factors {
            w.push(f);
        }
        w
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Appends a factor; exponent-zero factors are 1 and are dropped.
    pub fn push(&mut self, f: Factor) {
        if f.exponent() > 0 {
            self.factors.push(f);
        }
    }

    pub fn chevalley(&mut self, i: usize, a: u32) -> &mut Self {
        self.push(Factor::Chevalley { i, a });
        self
    }

    pub fn with_scalar(mut self, s: LaurentPolynomial) -> Self {
        self.scalar = s;
        self
    }

    /// The product `self * other`.
    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        GeneratorWord {
            scalar: &self.scalar * &other.scalar,
            factors: self.factors.iter().chain(&other.factors).cloned().collect(),
        }
    }

    /// A word evaluating to the bar image: the scalar is conjugated, Chevalley
    /// factors are kept and root factors swap with their bar images.
    pub fn bar_word(&self) -> GeneratorWord {
        GeneratorWord {
            scalar: self.scalar.bar(),
            factors: self.factors.iter().map(Factor::bar).collect(),
        }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors
                .iter()
                .map(Factor::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        if self.scalar.is_one() {
            f.write_str(&body)
        } else {
            write!(f, "({}) {body}", self.scalar)
        }
    }
}

/// Products of sums of words, expanded.
pub fn expand_product(parts: &[Vec<GeneratorWord>]) -> Vec<GeneratorWord> {
    let mut acc = vec![GeneratorWord::one()];
    for part in parts {
        acc = acc
            .iter()
            .flat_map(|w| part.iter().map(move |x| w.concat(x)))
            .filter(|w| !w.scalar.is_zero())
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_basics() {
        let mut w = GeneratorWord::one();
        w.chevalley(1, 2)
            .chevalley(2, 0)
            .push(Factor::Root { i: 1, j: 3, a: 1 });
        assert_eq!(w.factors().len(), 2);
        assert_eq!(w.to_string(), "E1^(2) E1,3");
        let b = w
            .clone()
            .with_scalar(LaurentPolynomial::v_pow(1))
            .bar_word();
        assert_eq!(b.to_string(), "(v^-1) E1^(2) bar(E1,3)");
        assert_eq!(b.bar_word().bar_word(), b);
        assert_eq!(GeneratorWord::one().to_string(), "1");
    }

    #[test]
    fn expansion_distributes() {
        let e = |i| GeneratorWord::from_factors([Factor::Chevalley { i, a: 1 }]);
        let sum = vec![e(1), e(2).with_scalar(LaurentPolynomial::constant(-1))];
        let words = expand_product(&[sum.clone(), vec![e(3)], sum]);
        assert_eq!(words.len(), 4);
        assert_eq!(words[3].to_string(), "E2 E3 E2");
        assert!(words[3].scalar.is_one());
    }
}
