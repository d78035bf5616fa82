//! Mendelian inheritance over single-gene traits.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Allele {
    Dominant,
    Recessive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenePair {
    pub trait_name: String,
    pub alleles: [Allele; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genotype(pub Vec<GenePair>);

/// A visible trait with a dominant and a recessive value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraitDef {
    pub name: String,
    pub symbol: char,
    pub dominant: String,
    pub recessive: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneticsError {
    #[error("parents do not carry the same traits")]
    TraitMismatch,
}

impl Genotype {
    /// Homozygous genotype over `traits`, with the listed trait names recessive.
    pub fn homozygous(traits: &[TraitDef], recessive: &[&str]) -> Self {
        Genotype(
            traits
                .iter()
                .map(|t| {
                    let a = if recessive.contains(&t.name.as_str()) {
                        Allele::Recessive
                    } else {
                        Allele::Dominant
                    };
                    GenePair {
                        trait_name: t.name.clone(),
                        alleles: [a, a],
                    }
                })
                .collect(),
        )
    }

    pub fn pair(&self, trait_name: &str) -> Option<&GenePair> {
        self.0.iter().find(|p| p.trait_name == trait_name)
    }

    /// Conventional notation, e.g. "Pp" (dominant first).
    pub fn notation(&self, t: &TraitDef) -> Option<String> {
        let p = self.pair(&t.name)?;
        let mut a = p.alleles;
        a.sort();
        Some(
            a.iter()
                .map(|x| match x {
                    Allele::Dominant => t.symbol.to_ascii_uppercase(),
                    Allele::Recessive => t.symbol.to_ascii_lowercase(),
                })
                .collect(),
        )
    }
}

/// One allele drawn uniformly from each parent, per trait.
pub fn punnett_cross<R: Rng + ?Sized>(
    a: &Genotype,
    b: &Genotype,
    rng: &mut R,
) -> Result<Genotype, GeneticsError> {
    if a.0.len() != b.0.len() {
        return Err(GeneticsError::TraitMismatch);
    }
    let mut out = Vec::with_capacity(a.0.len());
    for pa in &a.0 {
        let pb = b.pair(&pa.trait_name).ok_or(GeneticsError::TraitMismatch)?;
        let x = pa.alleles[rng.random_range(0..2)];
        let y = pb.alleles[rng.random_range(0..2)];
        out.push(GenePair {
            trait_name: pa.trait_name.clone(),
            alleles: [x, y],
        });
    }
    Ok(Genotype(out))
}

/// Dominant value iff at least one dominant allele.
pub fn phenotype<'a>(g: &Genotype, t: &'a TraitDef) -> Result<&'a str, GeneticsError> {
    let p = g.pair(&t.name).ok_or(GeneticsError::TraitMismatch)?;
    if p.alleles.contains(&Allele::Dominant) {
        Ok(&t.dominant)
    } else {
        Ok(&t.recessive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use alloc::vec;

    fn color() -> TraitDef {
        TraitDef {
            name: "flower color".into(),
            symbol: 'b',
            dominant: "purple".into(),
            recessive: "white".into(),
        }
    }

    fn g(a: Allele, b: Allele) -> Genotype {
        Genotype(vec![GenePair {
            trait_name: "flower color".into(),
            alleles: [a, b],
        }])
    }

    use Allele::{Dominant as D, Recessive as R};

    #[test]
    fn homozygous_cross_is_fixed() {
        let mut rng = stream(1, "g");
        for _ in 0..100 {
            let c = punnett_cross(&g(D, D), &g(D, D), &mut rng).unwrap();
            assert_eq!(c.notation(&color()).unwrap(), "BB");
        }
    }

    #[test]
    fn het_by_recessive_is_half_half() {
        // closed-form square: Bb x bb -> {Bb: 1/2, bb: 1/2}
        let mut rng = stream(2, "g");
        let n = 10_000;
        let het = (0..n)
            .filter(|_| {
                punnett_cross(&g(D, R), &g(R, R), &mut rng)
                    .unwrap()
                    .notation(&color())
                    .unwrap()
                    == "Bb"
            })
            .count();
        let f = het as f64 / n as f64;
        assert!((f - 0.5).abs() < 0.02, "{f}");
    }

    #[test]
    fn het_cross_within_two_percent() {
        let mut rng = stream(3, "g");
        let n = 10_000;
        let mut counts = [0usize; 3];
        for _ in 0..n {
            let c = punnett_cross(&g(D, R), &g(D, R), &mut rng).unwrap();
            match c.notation(&color()).unwrap().as_str() {
                "BB" => counts[0] += 1,
                "Bb" => counts[1] += 1,
                _ => counts[2] += 1,
            }
        }
        for (c, p) in counts.iter().zip([0.25, 0.5, 0.25]) {
            assert!((*c as f64 / n as f64 - p).abs() < 0.02);
        }
    }

    #[test]
    fn dominance_rule() {
        let t = color();
        assert_eq!(phenotype(&g(D, D), &t).unwrap(), "purple");
        assert_eq!(phenotype(&g(R, D), &t).unwrap(), "purple");
        assert_eq!(phenotype(&g(R, R), &t).unwrap(), "white");
        assert_eq!(
            phenotype(&Genotype::default(), &t),
            Err(GeneticsError::TraitMismatch)
        );
    }

    #[test]
    fn mismatched_parents() {
        let mut rng = stream(4, "g");
        let other = Genotype(vec![GenePair {
            trait_name: "seed shape".into(),
            alleles: [D, D],
        }]);
        assert_eq!(
            punnett_cross(&g(D, R), &other, &mut rng),
            Err(GeneticsError::TraitMismatch)
        );
        assert_eq!(
            punnett_cross(&g(D, R), &Genotype::default(), &mut rng),
            Err(GeneticsError::TraitMismatch)
        );
    }
}
