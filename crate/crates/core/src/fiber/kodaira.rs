//! Classical Kodaira configurations of reducible fibers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::SpecialFiber;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    /// `I_n`, n ≥ 1.
    I(u32),
    II,
    III,
    IV,
    /// `I*_n`, n ≥ 0.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// A fixed list covering every shape, used by corpus-wide checks.
    pub fn corpus() -> Vec<KodairaType> {
        let mut v: Vec<KodairaType> = (1..=9).map(KodairaType::I).collect();
        v.extend([KodairaType::II, KodairaType::III, KodairaType::IV]);
        v.extend((0..=4).map(KodairaType::IStar));
        v.extend([
            KodairaType::IVStar,
            KodairaType::IIIStar,
            KodairaType::IIStar,
        ]);
        v
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IStar(n) => write!(f, "I*{n}"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;

    /// Accepts `I3`, `I_3`, `I*2`, `I2*`, `I*_2`, `IV*`, ... (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownKodaira(s.to_string());
        let t: String = s
            .trim()
            .chars()
            .filter(|&c| c != '_')
            .collect::<String>()
            .to_ascii_uppercase();
        match t.as_str() {
            "II" => return Ok(KodairaType::II),
            "III" => return Ok(KodairaType::III),
            "IV" => return Ok(KodairaType::IV),
            "IV*" => return Ok(KodairaType::IVStar),
            "III*" => return Ok(KodairaType::IIIStar),
            "II*" => return Ok(KodairaType::IIStar),
            _ => {}
        }
        let rest = t.strip_prefix('I').ok_or_else(unknown)?;
        let (star, digits) = if let Some(r) = rest.strip_prefix('*') {
            (true, r)
        } else if let Some(r) = rest.strip_suffix('*') {
            (true, r)
        } else {
            (false, rest)
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let n: u32 = digits.parse().map_err(|_| unknown())?;
        match (star, n) {
            (true, n) => Ok(KodairaType::IStar(n)),
            (false, 0) => Err(unknown()),
            (false, n) => Ok(KodairaType::I(n)),
        }
    }
}

struct Graph {
    labels: Vec<String>,
    mult: Vec<i64>,
    edges: Vec<(usize, usize, i64)>,
}

impl Graph {
    fn new() -> Self {
        Graph {
            labels: Vec::new(),
            mult: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn node(&mut self, label: impl Into<String>, mult: i64) -> usize {
        self.labels.push(label.into());
        self.mult.push(mult);
        self.mult.len() - 1
    }

    fn edge(&mut self, a: usize, b: usize, m: i64) {
        self.edges.push((a, b, m));
    }

    /// Chain hanging off `from`, one node per multiplicity.
    fn arm(&mut self, from: usize, prefix: &str, mults: &[i64]) {
        let mut prev = from;
        for (k, &m) in mults.iter().enumerate() {
            let n = self.node(format!("{prefix}{k}"), m);
            self.edge(prev, n, 1);
            prev = n;
        }
    }

    fn build(self, name: String) -> Result<SpecialFiber> {
        let nu = self.mult.len();
        let mut off = IntMatrix::zeros(nu, nu);
        for (a, b, m) in self.edges {
            off[(a, b)] += m;
            off[(b, a)] += m;
        }
        SpecialFiber::from_graph(
            name,
            self.labels,
            self.mult.into_iter().map(BigInt::from).collect(),
            off,
        )
    }
}

pub fn kodaira(kind: KodairaType) -> Result<SpecialFiber> {
    let mut g = Graph::new();
    match kind {
        KodairaType::I(0) => return Err(Error::UnknownKodaira(kind.to_string())),
        KodairaType::I(1) | KodairaType::II => {
            // Irreducible: a nodal or cuspidal rational curve.
            return SpecialFiber::new(
                kind.to_string(),
                vec!["C0".into()],
                vec![BigInt::one()],
                IntMatrix::zeros(1, 1),
            );
        }
        KodairaType::I(2) | KodairaType::III => {
            let a = g.node("C0", 1);
            let b = g.node("C1", 1);
            g.edge(a, b, 2);
        }
        KodairaType::I(n) => {
            let n = n as usize;
            for i in 0..n {
                g.node(format!("C{i}"), 1);
            }
            for i in 0..n {
                g.edge(i, (i + 1) % n, 1);
            }
        }
        KodairaType::IV => {
            for i in 0..3 {
                g.node(format!("C{i}"), 1);
            }
            g.edge(0, 1, 1);
            g.edge(1, 2, 1);
            g.edge(0, 2, 1);
        }
        KodairaType::IStar(n) => {
            let n = n as usize;
            for i in 0..=n {
                g.node(format!("B{i}"), 2);
            }
            for i in 0..n {
                g.edge(i, i + 1, 1);
            }
            for (k, end) in [0, 0, n, n].into_iter().enumerate() {
                let leaf = g.node(format!("L{k}"), 1);
                g.edge(end, leaf, 1);
            }
        }
        KodairaType::IVStar => {
            let c = g.node("Z", 3);
            g.arm(c, "A", &[2, 1]);
            g.arm(c, "B", &[2, 1]);
            g.arm(c, "C", &[2, 1]);
        }
        KodairaType::IIIStar => {
            let c = g.node("Z", 4);
            g.arm(c, "A", &[3, 2, 1]);
            g.arm(c, "B", &[3, 2, 1]);
            g.arm(c, "C", &[2]);
        }
        KodairaType::IIStar => {
            let c = g.node("Z", 6);
            g.arm(c, "A", &[5, 4, 3, 2, 1]);
            g.arm(c, "B", &[4, 2]);
            g.arm(c, "C", &[3]);
        }
    }
    g.build(kind.to_string())
}
