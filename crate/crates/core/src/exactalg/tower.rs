use super::ring::{rat, rat_to_string, Rat, Ring, Scalar};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element `a + b·r + c·i + d·r·i` of ℚ(r, i) with `r² = 2/3`, `i² = −1`.
///
/// This is the smallest field containing the constants √(2/3) and i that the
/// appendix isomorphism between the two slices needs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tower {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Tower {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Tower { a, b, c, d }
    }

    /// r = √(2/3).
    pub fn r() -> Self {
        Tower::new(Rat::zero(), rat(1, 1), Rat::zero(), Rat::zero())
    }

    /// i = √−1.
    pub fn i() -> Self {
        Tower::new(Rat::zero(), Rat::zero(), rat(1, 1), Rat::zero())
    }

    /// The rational value, if the element lies in ℚ.
    pub fn rational_part(&self) -> Option<Rat> {
        (self.b.is_zero() && self.c.is_zero() && self.d.is_zero()).then(|| self.a.clone())
    }
}

// (p + q r)(p' + q' r) in ℚ(r)
fn mul_r(p: &Rat, q: &Rat, p2: &Rat, q2: &Rat) -> (Rat, Rat) {
    (p * p2 + rat(2, 3) * q * q2, p * q2 + q * p2)
}

impl Add for Tower {
    type Output = Tower;
    fn add(self, o: Tower) -> Tower {
        Tower::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Tower {
    type Output = Tower;
    fn sub(self, o: Tower) -> Tower {
        Tower::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Tower {
    type Output = Tower;
    fn neg(self) -> Tower {
        Tower::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Tower {
    type Output = Tower;
    fn mul(self, o: Tower) -> Tower {
        // (P + Q i)(P' + Q' i) = PP' − QQ' + (PQ' + QP') i, with P, Q ∈ ℚ(r)
        let pp = mul_r(&self.a, &self.b, &o.a, &o.b);
        let qq = mul_r(&self.c, &self.d, &o.c, &o.d);
        let pq = mul_r(&self.a, &self.b, &o.c, &o.d);
        let qp = mul_r(&self.c, &self.d, &o.a, &o.b);
        Tower::new(pp.0 - qq.0, pp.1 - qq.1, pq.0 + qp.0, pq.1 + qp.1)
    }
}

impl Ring for Tower {
    fn zero_like(&self) -> Self {
        Tower::zero_val()
    }
    fn one_like(&self) -> Self {
        Tower::one_val()
    }
    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl Scalar for Tower {
    fn zero_val() -> Self {
        Tower::from_rat(Rat::zero())
    }
    fn one_val() -> Self {
        Tower::from_rat(rat(1, 1))
    }
    fn from_rat(q: Rat) -> Self {
        Tower::new(q, Rat::zero(), Rat::zero(), Rat::zero())
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [(&self.a, ""), (&self.b, "r"), (&self.c, "i"), (&self.d, "ri")]
            .iter()
            .filter(|(q, _)| !q.is_zero())
            .map(|(q, s)| if s.is_empty() { rat_to_string(q) } else { format!("{}{}", rat_to_string(q), s) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({self})")
    }
}
