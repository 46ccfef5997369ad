//! Membership targets: products of powers of named generators, such as
//! `kappa0^4`, `kappa1^6 * alpha1` or `zeta^2*beta2`.

use std::sync::Arc;

use crate::chern::{ChernContext, QuillenClass};
use crate::error::{usage, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Kappa(usize),
    Zeta,
    Alpha(usize),
    Beta(usize),
}

/// Parsed target: `(generator, exponent)` factors in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub factors: Vec<(Generator, u64)>,
}

fn parse_generator(word: &str) -> Result<Generator> {
    let index = |prefix: &str| -> Result<usize> {
        let digits = &word[prefix.len()..];
        digits
            .parse()
            .map_err(|_| crate::Error::Usage(format!("'{word}': expected an index after '{prefix}'")))
    };
    if word == "zeta" {
        Ok(Generator::Zeta)
    } else if word.starts_with("kappa") {
        Ok(Generator::Kappa(index("kappa")?))
    } else if word.starts_with("alpha") {
        Ok(Generator::Alpha(index("alpha")?))
    } else if word.starts_with("beta") {
        Ok(Generator::Beta(index("beta")?))
    } else {
        usage(format!("unknown generator '{word}' (use kappaR, zeta, alphaI, betaI)"))
    }
}

pub fn parse(input: &str) -> Result<Target> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return usage("empty target expression");
    }
    let factors = compact
        .split('*')
        .map(|factor| {
            let (word, exp) = match factor.split_once('^') {
                Some((w, e)) => {
                    let e: u64 = e
                        .parse()
                        .map_err(|_| crate::Error::Usage(format!("'{factor}': bad exponent")))?;
                    (w, e)
                }
                None => (factor, 1),
            };
            Ok((parse_generator(word)?, exp))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Target { factors })
}

impl Target {
    pub fn evaluate(&self, ctx: &Arc<ChernContext>) -> Result<QuillenClass> {
        let mut acc = ctx.one();
        for &(g, e) in &self.factors {
            let class = match g {
                Generator::Kappa(r) => ctx.kappa(r)?,
                Generator::Zeta => ctx.zeta(),
                Generator::Alpha(i) => ctx.alpha(i)?,
                Generator::Beta(i) => ctx.beta(i)?,
            };
            acc = acc.try_mul(&class.pow(e))?;
        }
        Ok(acc)
    }
}
