//! Thin arithmetic wrapper over `astro_float::BigFloat` at a fixed working precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};

/// Working precision in bits.
pub const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

#[derive(Debug, Clone)]
pub struct Hp(BigFloat);

impl Hp {
    pub fn from_f64(v: f64) -> Hp {
        Hp(BigFloat::from_f64(v, PREC))
    }

    pub fn from_i64(v: i64) -> Hp {
        Hp(BigFloat::from_i64(v, PREC))
    }

    pub fn sqrt(&self) -> Hp {
        Hp(self.0.sqrt(PREC, RM))
    }

    pub fn ln(&self) -> Hp {
        CONSTS.with(|c| Hp(self.0.ln(PREC, RM, &mut c.borrow_mut())))
    }

    pub fn exp(&self) -> Hp {
        CONSTS.with(|c| Hp(self.0.exp(PREC, RM, &mut c.borrow_mut())))
    }

    pub fn abs(&self) -> Hp {
        Hp(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Nearest double (rounded from the leading 64 mantissa bits).
    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().expect("nonempty mantissa");
        // split the scaling so neither factor overflows or underflows on its own
        let e = exp - 64;
        let mag = top as f64 * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if sign == astro_float::Sign::Neg {
            -mag
        } else {
            mag
        }
    }
}

impl PartialEq for Hp {
    fn eq(&self, o: &Hp) -> bool {
        self.partial_cmp(o) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Hp {
    fn partial_cmp(&self, o: &Hp) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Hp> for &Hp {
            type Output = Hp;
            fn $m(self, o: &Hp) -> Hp {
                Hp(self.0.$m(&o.0, PREC, RM))
            }
        }
        impl $tr<Hp> for Hp {
            type Output = Hp;
            fn $m(self, o: Hp) -> Hp {
                Hp(self.0.$m(&o.0, PREC, RM))
            }
        }
        impl $tr<&Hp> for Hp {
            type Output = Hp;
            fn $m(self, o: &Hp) -> Hp {
                Hp(self.0.$m(&o.0, PREC, RM))
            }
        }
        impl $tr<f64> for &Hp {
            type Output = Hp;
            fn $m(self, o: f64) -> Hp {
                Hp(self.0.$m(&BigFloat::from_f64(o, PREC), PREC, RM))
            }
        }
        impl $tr<f64> for Hp {
            type Output = Hp;
            fn $m(self, o: f64) -> Hp {
                Hp(self.0.$m(&BigFloat::from_f64(o, PREC), PREC, RM))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(self.0.neg())
    }
}

impl Neg for &Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(self.0.clone().neg())
    }
}
