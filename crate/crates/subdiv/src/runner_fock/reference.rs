//! Reference expansions of two level-2 canonical basis vectors, with the
//! colour tag attached to each term. Each line is `shape ; coefficient ; tag`.

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::partition_core::Multipartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    /// The image term is present and `|ε_d|` matches the leading term.
    Cyan,
    /// The image term is absent from the expansion at `e+1`.
    Red,
    /// The image term is present but `|ε_d|` differs from the leading term.
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTerm {
    pub shape: Multipartition,
    pub coeff: LaurentPoly,
    pub tag: Tag,
}

/// `G_3((6),(5,1,1))` with charge `(0,1)`, complete.
pub const G3_6_511: &str = "\
6|5,1^2 ; 1 ; cyan\n\
6|3^2,1 ; q ; cyan\n\
5,1|5,1^2 ; q ; cyan\n\
5,1|3^2,1 ; q^2 ; cyan\n\
4,1|5,2,1 ; q ; cyan\n\
4,1|5,1^3 ; q^2 ; red\n\
4,1|4,3,1 ; q^2 ; cyan\n\
4,1|3^2,1^2 ; q^3 ; red\n\
4|5,3,1 ; q^3+q ; cyan\n\
3,2,1|5,1^2 ; q ; plain\n\
3,2,1|3^2,1 ; q^2 ; plain\n\
3,2|5,2,1 ; q^2 ; cyan\n\
3,2|5,1^3 ; q^3 ; plain\n\
3,2|4,3,1 ; q^3 ; cyan\n\
3,2|3^2,1^2 ; q^4 ; plain\n\
3,1^2|6,1^2 ; q ; red\n\
3,1^2|3^2,2 ; q^2 ; red\n\
3,1|7,1^2 ; q^2 ; cyan\n\
3,1|6,2,1 ; q^3+q ; cyan\n\
3,1|6,1^3 ; q^4+q^2 ; plain\n\
3,1|5,2^2 ; q^2 ; cyan\n\
3,1|5,1^4 ; q^3 ; red\n\
3,1|4^2,1 ; q^2 ; cyan\n\
3,1|4,3,2 ; 2q^3 ; cyan\n\
3,1|3^3 ; q^4 ; cyan\n\
3,1|3^2,2,1 ; q^5+q^3 ; plain\n\
3,1|3^2,1^3 ; q^4 ; red\n\
3|8,1^2 ; q ; cyan\n\
3|6,3,1 ; 2q^2 ; cyan\n\
3|5,4,1 ; q^3 ; cyan\n\
3|5,3,2 ; q^4+q^2 ; cyan\n\
3|3^2,2^2 ; q^3 ; red\n\
2^3|5,1^2 ; q^2 ; red\n\
2^3|3^2,1 ; q^3 ; red\n\
2^2|5,3,1 ; q^4+q^2 ; cyan\n\
2,1|8,1^2 ; q^2 ; cyan\n\
2,1|6,3,1 ; 2q^3+q ; cyan\n\
2,1|5,4,1 ; q^4+q^2 ; cyan\n\
2,1|5,3,2 ; q^5+2q^3+q ; cyan\n\
2,1|5,1^5 ; q^2 ; red\n\
2,1|3^2,2^2 ; q^4+q^2 ; plain\n\
2,1|3^2,1^4 ; q^3 ; red\n\
1^3|6,3,1 ; q^2 ; red\n\
1^3|5,4,1 ; q^3 ; red\n\
1^3|5,3,2 ; q^4+q^2 ; red\n\
1^3|5,1^5 ; q^3 ; red\n\
1^3|3^2,2^2 ; q^3 ; red\n\
1^3|3^2,1^4 ; q^4 ; red\n\
1^2|8,2,1 ; q^2 ; cyan\n\
1^2|8,1^3 ; q^3 ; red\n\
1^2|7,3,1 ; 2q^3 ; cyan\n\
1^2|6,3,1^2 ; 2q^4+q^2 ; plain\n\
1^2|5^2,1 ; q^4 ; cyan\n\
1^2|5,4,1^2 ; q^5+q^3 ; plain\n\
1^2|5,3^2 ; q^5+q^3 ; cyan\n\
1^2|5,3,2,1 ; q^6+2q^4+q^2 ; plain\n\
1^2|5,3,1^3 ; q^5+q^3 ; red\n\
1^2|5,2^3 ; q^3 ; plain\n\
1^2|5,2,1^4 ; q^4 ; red\n\
1^2|4,3,2^2 ; 2q^4 ; plain\n\
1^2|4,3,1^4 ; q^5 ; red\n\
1^2|3^3,2 ; q^5 ; plain\n\
1|8,3,1 ; q^4+q^2 ; cyan\n\
1|5,3,2^2 ; q^5+q^3 ; plain\n\
∅|11,1^2 ; q^2 ; cyan\n\
∅|9,3,1 ; q^3 ; cyan\n\
∅|8,3,2 ; q^3 ; cyan\n\
∅|6,3,2^2 ; q^4 ; red\n\
∅|5,3,2^2,1 ; q^4 ; red\n\
∅|4,3,2^2,1^2 ; q^3 ; red\n\
∅|3^3,2,1^2 ; q^4 ; red\n\
∅|3^2,2^3,1 ; q^5 ; red\n\
";

/// `G_4((8),(7,1,1))` with charge `(0,1)`; some terms are omitted.
pub const G4_8_711: &str = "\
8|7,1^2 ; 1 ; cyan\n\
8|4^2,1 ; q ; cyan\n\
7,1|7,1^2 ; q ; cyan\n\
7,1|4^2,1 ; q^2 ; cyan\n\
5,1|7,3,1 ; q ; cyan\n\
5,1|6,4,1 ; q^2 ; cyan\n\
5|7,4,1 ; q^3+q ; cyan\n\
4,3,1|7,1^2 ; q ; plain\n\
4,3,1|4^2,1 ; q^2 ; plain\n\
4,2|7,3,1 ; q^2 ; cyan\n\
4,2|7,1^4 ; q^2 ; plain\n\
4,2|6,4,1 ; q^3 ; cyan\n\
4,2|4^2,1^3 ; q^3 ; plain\n\
4,1|10,1^2 ; q^2 ; cyan\n\
4,1|8,3,1 ; q^3+q ; cyan\n\
4,1|8,1^4 ; q^3 ; plain\n\
4,1|7,3,2 ; q^2 ; cyan\n\
4,1|6,5,1 ; q^2 ; cyan\n\
4,1|6,4,2 ; 2q^3 ; cyan\n\
4,1|4^3 ; q^4 ; cyan\n\
4,1|4^2,2,1^2 ; q^4 ; plain\n\
4|11,1^2 ; q ; cyan\n\
4|8,4,1 ; 2q^2 ; cyan\n\
4|7,5,1 ; q^3 ; cyan\n\
4|7,4,2 ; q^4+q^2 ; cyan\n\
3,2|7,4,1 ; q^4+q^2 ; cyan\n\
3,1|11,1^2 ; q^2 ; cyan\n\
3,1|8,4,1 ; 2q^3+q ; cyan\n\
3,1|7,5,1 ; q^4+q^2 ; cyan\n\
3,1|7,4,2 ; q^5+2q^3+q ; cyan\n\
3,1|4^2,2^2,1 ; q^3 ; plain\n\
1^2|11,3,1 ; q^2 ; cyan\n\
1^2|10,4,1 ; 2q^3 ; cyan\n\
1^2|8,4,1^3 ; q^3 ; plain\n\
1^2|7^2,1 ; q^4 ; cyan\n\
1^2|7,5,1^3 ; q^4 ; plain\n\
1^2|7,4^2 ; q^5+q^3 ; cyan\n\
1^2|7,4,2,1^2 ; q^5+q^3 ; plain\n\
1^2|7,3,2^2,1 ; q^4 ; plain\n\
1^2|6,4,2^2,1 ; q^5+q^3 ; plain\n\
1^2|4^3,2,1 ; q^4 ; plain\n\
1|11,4,1 ; q^4+q^2 ; cyan\n\
1|7,4,2^2,1 ; q^4 ; plain\n\
∅|15,1^2 ; q^2 ; cyan\n\
∅|12,4,1 ; q^3 ; cyan\n\
∅|11,4,2 ; q^3 ; cyan\n\
";

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceTerm>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            let [shape, coeff, tag] = fields[..] else {
                return Err(Error::Parse(format!("bad reference line {line:?}")));
            };
            let tag = match tag {
                "cyan" => Tag::Cyan,
                "red" => Tag::Red,
                "plain" => Tag::Plain,
                _ => return Err(Error::Parse(format!("bad tag {tag:?}"))),
            };
            Ok(ReferenceTerm { shape: shape.parse()?, coeff: coeff.parse()?, tag })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        let a = parse_reference(G3_6_511).unwrap();
        let b = parse_reference(G4_8_711).unwrap();
        assert_eq!((a.len(), b.len()), (72, 46));
        assert!(a.iter().all(|t| t.shape.size() == 13));
        assert!(b.iter().all(|t| t.shape.size() == 17));
        assert_eq!(a.iter().filter(|t| t.tag == Tag::Cyan).count(), 32);
        assert_eq!(a.iter().filter(|t| t.tag == Tag::Red).count(), 26);
    }
}
