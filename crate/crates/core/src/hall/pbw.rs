use crate::repquiver::Multisegment;

use super::word::{Factor, GeneratorWord};

/// The PBW word of `M`: one divided-power root factor `E_{i,j}^{(m_{i,j})}` per
/// segment, ordered by `i` descending, then `j` descending.
pub fn pbw_monomial_general(m: &Multisegment) -> GeneratorWord {
    let mut segs: Vec<(usize, usize, u32)> = m.segments().collect();
    segs.sort_by_key(|s| std::cmp::Reverse((s.0, s.1)));
    GeneratorWord::from_factors(segs.into_iter().map(|(i, j, a)| {
        if i == j {
            Factor::Chevalley { i, a }
        } else {
            Factor::Root { i, j, a }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::HallAlgebra;
    use crate::hall::HallElement;
    use crate::repquiver::DimVector;

    #[test]
    fn word_shapes() {
        let m = Multisegment::parse("[1..1]^2+[2..2]", 2).unwrap();
        assert_eq!(pbw_monomial_general(&m).to_string(), "E2 E1^(2)");
        let m = Multisegment::parse("[1..2]", 2).unwrap();
        assert_eq!(pbw_monomial_general(&m).to_string(), "E1,2");
        assert_eq!(
            pbw_monomial_general(&Multisegment::zero(3)).to_string(),
            "1"
        );
        let m = Multisegment::parse("[1..3]+[1..2]+[2..3]+[3..3]", 3).unwrap();
        assert_eq!(pbw_monomial_general(&m).to_string(), "E3 E2,3 E1,3 E1,2");
    }

    #[test]
    fn pbw_words_evaluate_exactly() {
        for n in 1..=3 {
            let h = HallAlgebra::new(n);
            for d in DimVector::all_up_to(n, 4) {
                for m in Multisegment::enumerate(&d) {
                    let w = h.pbw_word(&m).unwrap();
                    assert_eq!(h.evaluate_word(&w).unwrap(), HallElement::basis(m));
                }
            }
        }
    }
}
