//! Cycle-notation parsing and formatting over colour names.
//!
//! Format: `(a b c)(d e)` with whitespace-separated names inside parentheses;
//! fixed points are omitted and the empty string is the identity.

use super::{ColourDomain, Perm, PermError};

pub(super) fn parse(domain: &ColourDomain, input: &str) -> Result<Perm, PermError> {
    let n = domain.len();
    let mut images: Vec<usize> = (0..n).collect();
    let mut moved = vec![false; n];
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Ok(Perm { images });
    }

    let bad = |reason: &str| PermError::BadCycles {
        input: input.to_string(),
        reason: reason.to_string(),
    };

    let mut rest = trimmed;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(bad("expected '('"));
        }
        let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
        let inner = &rest[1..close];
        rest = &rest[close + 1..];

        let mut cycle = Vec::new();
        for name in inner.split_whitespace() {
            let idx = domain
                .index_of(name)
                .ok_or_else(|| PermError::UnknownColour(name.to_string()))?;
            if moved[idx] {
                return Err(PermError::RepeatedPoint(name.to_string()));
            }
            moved[idx] = true;
            cycle.push(idx);
        }
        if cycle.is_empty() {
            return Err(bad("empty cycle"));
        }
        for w in cycle.windows(2) {
            images[w[0]] = w[1];
        }
        images[*cycle.last().unwrap()] = cycle[0];
    }
    Ok(Perm { images })
}

pub(super) fn format(perm: &Perm, domain: &ColourDomain) -> String {
    let n = perm.degree();
    debug_assert_eq!(n, domain.len());
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || perm.apply(start) == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        loop {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(domain.name(x));
            first = false;
            x = perm.apply(x);
            if x == start {
                break;
            }
        }
        out.push(')');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{ColourDomain, Perm};
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just(n).prop_perturb(move |n, mut rng| {
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (rng.next_u64() as usize) % (i + 1);
                images.swap(i, j);
            }
            Perm::from_images(images).unwrap()
        })
    }

    proptest! {
        #[test]
        fn cycle_notation_roundtrips(p in arb_perm(7)) {
            let domain = ColourDomain::new(["a", "b", "c", "d", "e", "f", "g"]).unwrap();
            let text = p.cycle_string(&domain);
            let back = Perm::parse(&domain, &text).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn inverse_then_is_identity(p in arb_perm(7)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.inverse().then(&p).is_identity());
        }
    }
}
