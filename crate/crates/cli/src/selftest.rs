//! Quick cross-checks between independent routes through the library.

use chains_core::{
    a_vector, betti_numbers, enumerate_chambers, equivalent, euler_characteristic, genetic_code,
    morse_inventory, pairing_matrix, realize, sh_faces, short_complex, LengthVector, MorseFunction,
    RealizationProblem, Rational, Result, VertexMap, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, outcome: Result<std::result::Result<String, String>>) -> Check {
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    Check { name: name.into(), passed, detail }
}

fn random_generic(rng: &mut ChaCha8Rng, n: usize, dominated: bool) -> LengthVector {
    loop {
        let mut e: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.gen_range(1..=40i64).into(), rng.gen_range(1..=7i64).into()))
            .collect();
        if dominated {
            let top = (0..n).max_by_key(|&i| e[i].clone()).unwrap();
            e.swap(top, n - 1);
        }
        let l = LengthVector::new(e).expect("positive entries");
        if l.is_generic() {
            return l;
        }
    }
}

pub fn run(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    checks.push(check("worked pair: codes and connectivity", (|| {
        let a: LengthVector = "1,1,1,2,3,3".parse()?;
        let b: LengthVector = "1/4,1,1,1,2,2".parse()?;
        let (ca, cb) = (genetic_code(&a)?, genetic_code(&b)?);
        let (ka, kb) = (short_complex(&a)?, short_complex(&b)?);
        let got = format!(
            "{ca} {:?} {} / {cb} {:?} {}",
            ka.f_vector(),
            ka.connected_components(),
            kb.f_vector(),
            kb.connected_components()
        );
        let ok = ca.to_string() == "⟨632,64⟩"
            && cb.to_string() == "⟨641⟩"
            && ka.f_vector() == [4, 3]
            && kb.f_vector() == [4, 3]
            && ka.connected_components() == 2
            && kb.connected_components() == 1;
        Ok(if ok { Ok(got) } else { Err(got) })
    })()));

    checks.push(check("worked pair: same Betti numbers, not diffeomorphic", (|| {
        let a: LengthVector = "1,1,1,2,3,3".parse()?;
        let b: LengthVector = "1/4,1,1,1,2,2".parse()?;
        for d in 3..=5 {
            let e = equivalent(&a, &b, d)?;
            if e.verdict != Verdict::NotDiffeomorphic || e.betti[0] != e.betti[1] {
                return Ok(Err(format!("d = {d}: {:?}", e.verdict)));
            }
        }
        let ranks = betti_numbers(&a, 3)?.ranks.unwrap_or_default();
        Ok(if ranks == [1, 0, 4, 3, 3, 4, 0, 1] { Ok(format!("{ranks:?}")) } else { Err(format!("{ranks:?}")) })
    })()));

    checks.push(check("code down-closure equals direct enumeration", (|| {
        for _ in 0..200 {
            let n = rng.gen_range(3..=12);
            let l = random_generic(&mut rng, n, false);
            let (sorted, perm) = l.normalize_with_permutation();
            let back = VertexMap::new((1..n).map(|k| (k, perm[k - 1])).collect());
            let mut faces: Vec<_> = genetic_code(&l)?.faces().into_iter().map(|f| back.apply(f)).collect();
            faces.sort();
            if faces != sh_faces(&l)? || genetic_code(&sorted)? != genetic_code(&l)? {
                return Ok(Err(format!("mismatch at {l}")));
            }
        }
        Ok(Ok("200 vectors".into()))
    })()));

    checks.push(check("Morse counts match a-vector and 2^(n-1)", (|| {
        for _ in 0..100 {
            let n = rng.gen_range(3..=10);
            let l = random_generic(&mut rng, n, false);
            let a = a_vector(&l)?;
            let d = rng.gen_range(2..=6i64);
            let g = morse_inventory(&l, d, MorseFunction::GOnV)?.index_counts();
            let f = morse_inventory(&l, d, MorseFunction::FPrimeOnZPrime)?;
            let step = (d - 1) as usize;
            let g_ok = a.iter().enumerate().all(|(s, &c)| g.get(&(s * step)).copied().unwrap_or(0) == c);
            if !g_ok || f.critical_points.len() != 1 << (n - 1) {
                return Ok(Err(format!("mismatch at {l}, d = {d}")));
            }
        }
        Ok(Ok("100 vectors".into()))
    })()));

    checks.push(check("Betti duality and Euler characteristic", (|| {
        for _ in 0..200 {
            let n = rng.gen_range(4..=9);
            let l = random_generic(&mut rng, n, true);
            let d = [3i64, 4, 6][rng.gen_range(0..3)];
            let t = betti_numbers(&l, d)?;
            let r = t.ranks.clone().unwrap_or_default();
            let dim = t.dim as usize;
            let sym = (0..=dim).all(|k| r[k] == r[dim - k]);
            let total = r.iter().sum::<u64>() == 2 * a_vector(&l)?.iter().sum::<u64>();
            let chi = d % 2 == 0 || euler_characteristic(&t)? == 0;
            if !(sym && total && chi) {
                return Ok(Err(format!("{l}, d = {d}: {r:?}")));
            }
        }
        Ok(Ok("200 vectors".into()))
    })()));

    checks.push(check("pairing matrices are permutation matrices", (|| {
        for n in 1..=12 {
            for k in 0..n {
                if !pairing_matrix(n, k)?.is_permutation_matrix() {
                    return Ok(Err(format!("n = {n}, k = {k}")));
                }
            }
        }
        Ok(Ok("n <= 12".into()))
    })()));

    checks.push(check("enumerated chambers realize back to their codes", (|| {
        let chambers = enumerate_chambers(5, false)?;
        for c in &chambers {
            let r = realize(&RealizationProblem::from_code(&c.code, false))?;
            let back = r.witness.as_ref().map(genetic_code).transpose()?;
            if back.as_ref() != Some(&c.code) {
                return Ok(Err(format!("{}", c.code)));
            }
        }
        Ok(Ok(format!("{} chambers for n = 5", chambers.len())))
    })()));

    let passed = checks.iter().all(|c| c.passed);
    SelftestReport { seed, passed, checks }
}

pub fn render_text(r: &SelftestReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        s.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    s.push_str(if r.passed { "all checks passed\n" } else { "some checks failed\n" });
    s
}
