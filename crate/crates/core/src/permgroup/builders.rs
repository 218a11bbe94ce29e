use super::{FiniteGroup, Permutation};
use crate::arith;
use crate::{GroupError, Result};

/// Builder ids accepted by [`named_group`].
pub const BUILDERS: &[&str] = &[
    "cyclic",
    "elem_abelian",
    "dihedral",
    "dicyclic",
    "sym",
    "alt",
    "holomorph_cyclic",
    "frobenius_metacyclic",
];

fn invalid(builder: &str, reason: impl Into<String>) -> GroupError {
    GroupError::InvalidBuilderArgs {
        builder: builder.to_string(),
        reason: reason.into(),
    }
}

fn arity(builder: &str, args: &[u64], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(invalid(builder, format!("expected {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn cycle(points: &[usize], degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p] = points[(i + 1) % points.len()] as u32;
    }
    Permutation::from_images(images).expect("cycle is a bijection")
}

fn affine(m: u64, mult: u64, add: u64) -> Permutation {
    let images = (0..m).map(|x| ((mult * x + add) % m) as u32).collect();
    Permutation::from_images(images).expect("unit multiplier gives a bijection")
}

/// Builds one of the named families in [`BUILDERS`] as a permutation group.
///
/// * `cyclic(n)`: order `n` on `n` points.
/// * `elem_abelian(p, r)`: `(Z_p)^r` on `p*r` points.
/// * `dihedral(n)`: order `2n`, acting on the `n` vertices of an `n`-gon when `n >= 3`.
/// * `dicyclic(n)`: order `4n`, right regular action.
/// * `sym(n)`, `alt(n)`: natural action on `n` points.
/// * `holomorph_cyclic(m)`: `Z_m ⋊ Aut(Z_m)` acting affinely on the residues mod `m`.
/// * `frobenius_metacyclic(p, q, n)`: `Z_p ⋊ Z_{q^n}` inside `holomorph_cyclic(p)`;
///   needs `q^n | p - 1`.
pub fn named_group(name: &str, args: &[u64]) -> Result<FiniteGroup> {
    named_group_with_cap(name, args, super::DEFAULT_ORDER_CAP)
}

pub(crate) fn named_group_with_cap(name: &str, args: &[u64], cap: usize) -> Result<FiniteGroup> {
    let label = format!(
        "{name}({})",
        args.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    );
    let (degree, gens) = match name {
        "cyclic" => {
            arity(name, args, 1)?;
            let n = args[0] as usize;
            if n == 0 {
                return Err(invalid(name, "order must be positive"));
            }
            let pts: Vec<usize> = (0..n).collect();
            (n, if n > 1 { vec![cycle(&pts, n)] } else { vec![] })
        }
        "elem_abelian" => {
            arity(name, args, 2)?;
            let (p, r) = (args[0] as usize, args[1] as usize);
            if !arith::is_prime(p as u64) || r == 0 {
                return Err(invalid(name, "needs a prime p and rank r >= 1"));
            }
            let degree = p * r;
            let gens = (0..r)
                .map(|i| cycle(&(i * p..(i + 1) * p).collect::<Vec<_>>(), degree))
                .collect();
            (degree, gens)
        }
        "dihedral" => {
            arity(name, args, 1)?;
            let n = args[0] as usize;
            match n {
                0 => return Err(invalid(name, "n must be positive")),
                1 => (2, vec![cycle(&[0, 1], 2)]),
                2 => (
                    4,
                    vec![
                        Permutation::parse_cycles("(1 2)(3 4)", 4)?,
                        Permutation::parse_cycles("(1 3)(2 4)", 4)?,
                    ],
                ),
                _ => {
                    let rot = cycle(&(0..n).collect::<Vec<_>>(), n);
                    let refl = Permutation::from_images(
                        (0..n).map(|x| ((n - x) % n) as u32).collect(),
                    )?;
                    (n, vec![rot, refl])
                }
            }
        }
        "dicyclic" => {
            arity(name, args, 1)?;
            let n = args[0] as usize;
            if n == 0 {
                return Err(invalid(name, "n must be positive"));
            }
            dicyclic_regular(n)
        }
        "sym" => {
            arity(name, args, 1)?;
            let n = args[0] as usize;
            if n == 0 {
                return Err(invalid(name, "n must be positive"));
            }
            let gens = if n >= 2 {
                vec![cycle(&[0, 1], n), cycle(&(0..n).collect::<Vec<_>>(), n)]
            } else {
                vec![]
            };
            (n, gens)
        }
        "alt" => {
            arity(name, args, 1)?;
            let n = args[0] as usize;
            if n == 0 {
                return Err(invalid(name, "n must be positive"));
            }
            let mut gens = Vec::new();
            if n >= 3 {
                gens.push(cycle(&[0, 1, 2], n));
            }
            if n >= 4 {
                let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
                gens.push(cycle(&long, n));
            }
            (n, gens)
        }
        "holomorph_cyclic" => {
            arity(name, args, 1)?;
            let m = args[0];
            if m == 0 {
                return Err(invalid(name, "m must be positive"));
            }
            holomorph(m)
        }
        "frobenius_metacyclic" => {
            arity(name, args, 3)?;
            let (p, q, n) = (args[0], args[1], args[2]);
            if !arith::is_prime(p) || !arith::is_prime(q) || n == 0 {
                return Err(invalid(name, "needs primes p, q and n >= 1"));
            }
            let qn = q.checked_pow(n as u32).ok_or_else(|| invalid(name, "q^n overflows"))?;
            if (p - 1) % qn != 0 {
                return Err(invalid(name, format!("{q}^{n} does not divide {p} - 1")));
            }
            let unit = (2..p)
                .find(|&u| arith::multiplicative_order(u, p) == Some(qn))
                .ok_or_else(|| invalid(name, "no unit of the required order"))?;
            (p as usize, vec![affine(p, 1, 1), affine(p, unit, 0)])
        }
        _ => return Err(GroupError::UnknownBuilder(name.to_string())),
    };
    Ok(FiniteGroup::generate_with_cap(degree, gens, cap)?.named(label))
}

fn holomorph(m: u64) -> (usize, Vec<Permutation>) {
    if m == 1 {
        return (1, vec![]);
    }
    let mut gens = vec![affine(m, 1, 1)];
    // greedily pick units until they generate the whole unit group
    let mut reached = vec![false; m as usize];
    reached[1] = true;
    let mut units = Vec::new();
    for u in 2..m {
        if arith::gcd(u, m) != 1 || reached[u as usize] {
            continue;
        }
        units.push(u);
        gens.push(affine(m, u, 0));
        let mut stack: Vec<u64> = (0..m).filter(|&x| reached[x as usize]).collect();
        while let Some(x) = stack.pop() {
            for &v in &units {
                let y = x * v % m;
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    (m as usize, gens)
}

/// Dic_n = ⟨a, x | a^{2n} = 1, x^2 = a^n, x a x⁻¹ = a⁻¹⟩ in its right regular action.
fn dicyclic_regular(n: usize) -> (usize, Vec<Permutation>) {
    let two_n = 2 * n;
    let order = 4 * n;
    let label = |i: usize, j: usize| i % two_n + two_n * j;
    // (a^i x^j)(a^k x^l) = a^{i ± k} x^{j + l}, with x^2 = a^n
    let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| -> (usize, usize) {
        let shifted = if j == 0 { i + k } else { i + two_n - k % two_n };
        if j + l == 2 {
            (shifted + n, 0)
        } else {
            (shifted, j + l)
        }
    };
    let right = |g: (usize, usize)| {
        let mut images = vec![0u32; order];
        for j in 0..2 {
            for i in 0..two_n {
                let (a, b) = mul((i, j), g);
                images[label(i, j)] = label(a, b) as u32;
            }
        }
        Permutation::from_images(images).expect("regular action is a bijection")
    };
    (order, vec![right((1, 0)), right((0, 1))])
}

/// `G × H` acting on the disjoint union of the two point sets.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_with_cap(g, h, super::DEFAULT_ORDER_CAP)
}

pub(crate) fn direct_product_with_cap(
    g: &FiniteGroup,
    h: &FiniteGroup,
    cap: usize,
) -> Result<FiniteGroup> {
    if g.order().saturating_mul(h.order()) > cap {
        return Err(GroupError::OrderCapExceeded { cap });
    }
    let total = g.degree() + h.degree();
    let gens = g
        .generators()
        .iter()
        .map(|p| p.embed(0, total))
        .chain(h.generators().iter().map(|p| p.embed(g.degree(), total)))
        .collect();
    Ok(FiniteGroup::generate_with_cap(total, gens, cap)?
        .named(format!("{} x {}", g.name(), h.name())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(named_group("cyclic", &[1]).unwrap().order(), 1);
        assert_eq!(named_group("cyclic", &[12]).unwrap().order(), 12);
        assert_eq!(named_group("elem_abelian", &[2, 3]).unwrap().order(), 8);
        for n in 1..=12 {
            assert_eq!(named_group("dihedral", &[n]).unwrap().order(), 2 * n as usize);
            assert_eq!(named_group("dicyclic", &[n]).unwrap().order(), 4 * n as usize);
        }
        let fact = [1, 1, 2, 6, 24, 120];
        for n in 1..=5 {
            assert_eq!(named_group("sym", &[n]).unwrap().order(), fact[n as usize]);
            assert_eq!(
                named_group("alt", &[n]).unwrap().order(),
                (fact[n as usize] / 2).max(1)
            );
        }
        for m in 1..=16u64 {
            assert_eq!(
                named_group("holomorph_cyclic", &[m]).unwrap().order() as u64,
                m * arith::euler_phi(m)
            );
        }
    }

    #[test]
    fn holomorphs_from_presentations() {
        assert_eq!(named_group("holomorph_cyclic", &[5]).unwrap().order(), 20);
        assert_eq!(named_group("holomorph_cyclic", &[7]).unwrap().order(), 42);
    }

    #[test]
    fn frobenius_orders_and_errors() {
        assert_eq!(named_group("frobenius_metacyclic", &[5, 2, 2]).unwrap().order(), 20);
        assert_eq!(named_group("frobenius_metacyclic", &[7, 3, 1]).unwrap().order(), 21);
        assert_eq!(named_group("frobenius_metacyclic", &[17, 2, 3]).unwrap().order(), 136);
        assert!(matches!(
            named_group("frobenius_metacyclic", &[13, 3, 2]),
            Err(GroupError::InvalidBuilderArgs { .. })
        ));
        assert!(matches!(
            named_group("frobenius_metacyclic", &[9, 2, 1]),
            Err(GroupError::InvalidBuilderArgs { .. })
        ));
    }

    #[test]
    fn dicyclic_relations() {
        let g = named_group("dicyclic", &[2]).unwrap();
        // Q8: a unique involution
        let involutions = (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn unknown_and_bad_arity() {
        assert_eq!(
            named_group("monster", &[]).unwrap_err(),
            GroupError::UnknownBuilder("monster".into())
        );
        assert!(named_group("cyclic", &[]).is_err());
        assert!(named_group("cyclic", &[0]).is_err());
    }

    #[test]
    fn products() {
        let z2 = named_group("cyclic", &[2]).unwrap();
        let z3 = named_group("cyclic", &[3]).unwrap();
        let p = direct_product(&z2, &z3).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.basic_invariants().is_abelian);
        assert!(p.basic_invariants().is_cyclic);
        let one = named_group("cyclic", &[1]).unwrap();
        let s4 = named_group("sym", &[4]).unwrap();
        assert_eq!(direct_product(&one, &s4).unwrap().order(), 24);
        let hol5 = named_group("holomorph_cyclic", &[5]).unwrap();
        assert_eq!(direct_product(&hol5, &z3).unwrap().order(), 60);
        assert_eq!(
            direct_product_with_cap(&hol5, &s4, 200).unwrap_err(),
            GroupError::OrderCapExceeded { cap: 200 }
        );
    }
}
