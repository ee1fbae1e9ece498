//! Exact real-root counting with Sturm sequences.

use super::mpoly::MPoly;
use super::upoly::UPoly;
use super::ArithError;

/// Squarefree part `p / gcd(p, p')`.
pub fn squarefree_part(p: &UPoly) -> UPoly {
    let g = p.gcd(&p.derivative());
    if g.is_constant() {
        return p.clone();
    }
    p.div_exact(&g).expect("gcd divides")
}

/// Canonical Sturm chain `p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)`.
pub fn sturm_chain(p: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![p.clone()];
    if p.is_constant() {
        return chain;
    }
    chain.push(p.derivative());
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(signs: impl IntoIterator<Item = i32>) -> usize {
    let mut prev = 0;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Number of distinct real roots of a nonzero univariate polynomial.
pub fn real_root_count(p: &UPoly) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    let sf = squarefree_part(p);
    if sf.is_constant() {
        return 0;
    }
    let chain = sturm_chain(&sf);
    let at_neg = sign_changes(chain.iter().map(UPoly::sign_at_neg_inf));
    let at_pos = sign_changes(chain.iter().map(UPoly::sign_at_pos_inf));
    at_neg - at_pos
}

/// Distinct real roots of a univariate [`MPoly`] (any single variable slot).
pub fn sturm_real_root_count(p: &MPoly) -> Result<usize, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let var = (0..p.nvars()).find(|&v| p.degree_in(v) > 0).unwrap_or(0);
    let u = UPoly::from_mpoly(p, var).ok_or(ArithError::NotUnivariate)?;
    Ok(real_root_count(&u))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_cases() {
        assert_eq!(real_root_count(&UPoly::from_ints(&[1, 0, 1])), 0);
        assert_eq!(real_root_count(&UPoly::from_ints(&[-1, 0, 1])), 2);
        assert_eq!(real_root_count(&UPoly::from_ints(&[1, 1, 1])), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x+1)^2 (x-2)
        let p = &UPoly::from_ints(&[1, 2, 1]) * &UPoly::from_ints(&[-2, 1]);
        assert_eq!(real_root_count(&p), 2);
    }

    #[test]
    fn constant_has_no_roots() {
        assert_eq!(real_root_count(&UPoly::from_ints(&[7])), 0);
    }

    #[test]
    fn mpoly_entry_point() {
        let x = MPoly::var(2, 1);
        let p = &(&x * &x) - &MPoly::one(2);
        assert_eq!(sturm_real_root_count(&p).unwrap(), 2);
        assert!(sturm_real_root_count(&MPoly::zero(1)).is_err());
        let two_vars = &MPoly::var(2, 0) + &x;
        assert!(sturm_real_root_count(&two_vars).is_err());
    }
}
