//! Quaternions reduced mod 9, packed as `r0 + 9 r1 + 81 r2 + 729 r3`.
//!
//! Cube coefficients are integer polynomials in the coefficients and in
//! `a, b`, so the cube of a class mod 9 is well defined once `a, b mod 9`
//! are fixed.

pub(crate) const SPACE: usize = 9 * 9 * 9 * 9;

pub(crate) type Code = u16;

pub(crate) fn encode(r: [u8; 4]) -> Code {
    r.iter().rev().fold(0, |acc, &d| acc * 9 + Code::from(d % 9))
}

pub(crate) fn decode(code: Code) -> [u8; 4] {
    let mut c = code;
    std::array::from_fn(|_| {
        let d = (c % 9) as u8;
        c /= 9;
        d
    })
}

pub(crate) fn sub(x: Code, y: Code) -> Code {
    let (x, y) = (decode(x), decode(y));
    encode(std::array::from_fn(|n| (9 + x[n] - y[n]) % 9))
}

pub(crate) fn add(x: Code, y: Code) -> Code {
    let (x, y) = (decode(x), decode(y));
    encode(std::array::from_fn(|n| (x[n] + y[n]) % 9))
}

/// Cube of a residue tuple mod `m`, given `a, b mod m`.
pub(crate) fn cube_mod(x: [u8; 4], a: u32, b: u32, m: u32) -> [u8; 4] {
    let [x0, x1, x2, x3] = x.map(u32::from);
    let p = (a * x1 * x1 + b * x2 * x2 + a * b % m * x3 * x3) % m;
    let sq = x0 * x0 % m;
    // (x0² - 3P) x0 and 3x0² - P, kept non-negative by adding multiples of m
    let real = (sq + 3 * m - 3 * p) % m * x0 % m;
    let factor = (3 * sq + m - p) % m;
    [real, factor * x1 % m, factor * x2 % m, factor * x3 % m].map(|v| v as u8)
}

/// For each class code, the code of its cube.
pub(crate) fn cube_table(a9: u32, b9: u32) -> Vec<Code> {
    (0..SPACE as Code)
        .map(|c| encode(cube_mod(decode(c), a9, b9, 9)))
        .collect()
}

/// A subset of the `9⁴` classes.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct CodeSet {
    bits: Vec<u64>,
}

impl CodeSet {
    pub(crate) fn empty() -> Self {
        CodeSet {
            bits: vec![0; SPACE.div_ceil(64)],
        }
    }

    pub(crate) fn insert(&mut self, c: Code) {
        self.bits[usize::from(c) / 64] |= 1 << (c % 64);
    }

    pub(crate) fn contains(&self, c: Code) -> bool {
        self.bits[usize::from(c) / 64] >> (c % 64) & 1 == 1
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = Code> + '_ {
        (0..SPACE as Code).filter(|&c| self.contains(c))
    }

    pub(crate) fn sumset(&self, other: &CodeSet) -> CodeSet {
        let rhs: Vec<Code> = other.iter().collect();
        let mut out = CodeSet::empty();
        for x in self.iter() {
            for &y in &rhs {
                out.insert(add(x, y));
            }
        }
        out
    }
}

/// `sets[k - 1]` holds the classes of sums of exactly `k` cubes, `k ≤ max`.
pub(crate) fn attainable_sums(cubes: &[Code], max: usize) -> Vec<CodeSet> {
    let mut single = CodeSet::empty();
    for &c in cubes {
        single.insert(c);
    }
    let mut sets = vec![single.clone()];
    while sets.len() < max {
        let next = sets.last().expect("non-empty").sumset(&single);
        sets.push(next);
    }
    sets
}
