//! Acceptance criteria, one line of output per criterion.
//!
//! Runs with `cargo test -p chaoscrack --test acceptance`. Exits nonzero if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use chaoscrack::attack::{self, CountingOracle, EncryptionOracle, QUERY_BUDGET};
use chaoscrack::cipher::{
    self, build_mask, derive_schedule, encrypt, encrypt_stepwise, generate_t_sequence,
    permutation_for, KeyMaterial,
};
use chaoscrack::fixtures::{random_image, random_key, reference_key, synthetic_image};
use chaoscrack::image::Image;
use chaoscrack::metrics::{
    histogram_variance_exact, keystream_utilization, npcr, shannon_entropy, uaci,
};
use chaoscrack::KeyedOracle;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Random image with pixel sum exactly `eta`, built by nudging a random
/// image up or down one unit at a time.
fn image_with_sum(rng: &mut impl Rng, side: usize, eta: i64) -> Image {
    let mut px = random_image(rng, side).into_pixels();
    let mut sum: i64 = px.iter().map(|&p| i64::from(p)).sum();
    while sum != eta {
        let k = rng.gen_range(0..px.len());
        if sum < eta && px[k] < 255 {
            px[k] += 1;
            sum += 1;
        } else if sum > eta && px[k] > 0 {
            px[k] -= 1;
            sum -= 1;
        }
    }
    Image::new(side, side, px).unwrap()
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac01);
    let sides = [4usize, 8, 16, 64];
    let trials = 200;
    for t in 0..trials {
        let side = sides[t % sides.len()];
        let key = random_key(&mut rng, side);
        let img = random_image(&mut rng, side);
        let enc = encrypt(&img, &key).map_err(|e| e.to_string())?;
        let dec = cipher::decrypt(&enc.cipher, &key, enc.eta).map_err(|e| e.to_string())?;
        ensure!(dec == img, "trial {t} (N = {side}) did not round-trip");
    }
    Ok(format!(
        "{trials} random (key, image) pairs, N in {sides:?}"
    ))
}

fn attack_headline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac02);
    let trials = 20;
    for t in 0..trials {
        let key = random_key(&mut rng, 64);
        let img = random_image(&mut rng, 64);
        ensure!(img.pixel_sum() >= 1, "trial {t}: zero-sum image");
        let enc = encrypt(&img, &key).map_err(|e| e.to_string())?;
        let mut oracle = CountingOracle::new(KeyedOracle::new(key));
        let rec = attack::attack_decrypt(&mut oracle, &enc.cipher, enc.eta)
            .map_err(|e| format!("trial {t}: {e}"))?;
        let errors = rec
            .pixels()
            .iter()
            .zip(img.pixels())
            .filter(|(a, b)| a != b)
            .count();
        ensure!(errors == 0, "trial {t}: {errors} pixel errors");
        ensure!(
            oracle.queries() == QUERY_BUDGET,
            "trial {t}: {} queries",
            oracle.queries()
        );
    }

    let key = reference_key();
    let img = synthetic_image(256, 2020);
    let enc = encrypt(&img, &key).map_err(|e| e.to_string())?;
    let mut oracle = CountingOracle::new(KeyedOracle::new(key));
    let rec =
        attack::attack_decrypt(&mut oracle, &enc.cipher, enc.eta).map_err(|e| e.to_string())?;
    ensure!(
        rec == img,
        "256x256 reference-key run: plaintext not recovered"
    );
    ensure!(
        oracle.queries() == 5,
        "256x256 run used {} queries",
        oracle.queries()
    );
    Ok(format!(
        "{trials} random 64x64 attacks + 256x256 reference key, 0 pixel errors, 5 queries each"
    ))
}

fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac03);
    let trials = 100;
    for t in 0..trials {
        let side = if t % 2 == 0 { 8 } else { 16 };
        let key = random_key(&mut rng, side);
        let img = random_image(&mut rng, side);
        let a = encrypt(&img, &key).map_err(|e| e.to_string())?;
        let b = encrypt_stepwise(&img.to_wide(), &key).map_err(|e| e.to_string())?;
        ensure!(
            a == b,
            "instance {t} (N = {side}): stepwise and mask/permutation ciphers differ"
        );
    }
    Ok(format!(
        "{trials} instances, 8x8 and 16x16, entrywise equal"
    ))
}

fn localization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac04);
    let trials = 50;
    for t in 0..trials {
        let side = [4usize, 8, 16, 32, 64][t % 5];
        let key = random_key(&mut rng, side);
        let eta = rng.gen_range(1..=(side * side * 255) as i64);
        let mut oracle = KeyedOracle::new(key.clone());
        let tr = attack::run_attack(&mut oracle, eta, side, side)
            .map_err(|e| format!("instance {t}: {e}"))?;

        let s = derive_schedule(&key, eta, side, side).map_err(|e| e.to_string())?;
        ensure!(
            tr.key.position == (s.u, s.v),
            "instance {t}: located {:?}, schedule ({}, {})",
            tr.key.position,
            s.u,
            s.v
        );
        let mask = build_mask(&key, eta, side, side).map_err(|e| e.to_string())?;
        ensure!(tr.key.mask == mask, "instance {t}: recovered mask differs");
        let inverse = permutation_for(&key, eta, side, side)
            .map_err(|e| e.to_string())?
            .inverse();
        ensure!(
            tr.key.permutation.as_slice() == inverse.as_slice(),
            "instance {t}: permutation differs"
        );
    }
    Ok(format!(
        "{trials} instances: position, mask and permutation exact"
    ))
}

fn key_reuse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac05);
    let trials = 20;
    for t in 0..trials {
        let side = 32;
        let key = random_key(&mut rng, side);
        let first = random_image(&mut rng, side);
        let eta = first.pixel_sum();
        let second = image_with_sum(&mut rng, side, eta);
        ensure!(second != first, "trial {t}: degenerate second image");

        let mut oracle = CountingOracle::new(KeyedOracle::new(key.clone()));
        let rec_key = attack::recover_equivalent_key(&mut oracle, eta, side, side)
            .map_err(|e| e.to_string())?;
        let spent = oracle.queries();

        let c1 = encrypt(&first, &key).map_err(|e| e.to_string())?.cipher;
        let c2 = encrypt(&second, &key).map_err(|e| e.to_string())?.cipher;
        ensure!(
            rec_key.decrypt(&c1).map_err(|e| e.to_string())? == first,
            "trial {t}: first image"
        );
        ensure!(
            rec_key.decrypt(&c2).map_err(|e| e.to_string())? == second,
            "trial {t}: second image"
        );
        ensure!(oracle.queries() == spent, "trial {t}: extra queries");
    }
    Ok(format!(
        "{trials} trials: second cipher decrypted with 0 extra queries"
    ))
}

fn weak_key() -> Outcome {
    let t = generate_t_sequence(128.0, 65_536);
    ensure!(
        t.iter().all(|&x| x == 0),
        "t-sequence from 128 is not all zero"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0xac06);
    for trial in 0..10 {
        let side = 16;
        let mut key = random_key(&mut rng, side);
        key.s0[0] = 128.0;
        let img = synthetic_image(side, trial);
        let eta = img.pixel_sum();
        let mask = build_mask(&key, eta, side, side).map_err(|e| e.to_string())?;
        ensure!(mask.is_zero(), "trial {trial}: mask not all zero");
        let perm = permutation_for(&key, eta, side, side).map_err(|e| e.to_string())?;
        let cipher = encrypt(&img, &key).map_err(|e| e.to_string())?.cipher;
        ensure!(
            cipher.pixels() == perm.apply(img.pixels()).as_slice(),
            "trial {trial}: cipher is not the permuted plaintext"
        );
    }
    Ok("s0[0] = 128: zero keystream, cipher = permuted plaintext".into())
}

fn metric_values() -> Outcome {
    let a = histogram_variance_exact(&[2, 2, 3, 3, 4, 7]).map_err(|e| e.to_string())?;
    let b = histogram_variance_exact(&[2, 2, 3, 3, 5, 6]).map_err(|e| e.to_string())?;
    ensure!(a == Ratio::new(35, 12), "variance of 2,2,3,3,4,7 = {a}");
    ensure!(b == Ratio::new(9, 4), "variance of 2,2,3,3,5,6 = {b}");
    ensure!(a > b, "expected 35/12 > 9/4");

    let uniform = Image::from_fn(256, 256, |i, j| ((i + j) % 256) as u8).unwrap();
    let h = shannon_entropy(&uniform);
    ensure!((h - 8.0).abs() <= 1e-12, "uniform entropy {h}");

    let zero = Image::filled(16, 16, 0).unwrap();
    let full = Image::filled(16, 16, 255).unwrap();
    let m = |r: Result<f64, _>| r.map_err(|e: chaoscrack::metrics::MetricError| e.to_string());
    ensure!(
        m(npcr(&zero, &zero))? == 0.0 && m(uaci(&zero, &zero))? == 0.0,
        "identical pair not 0"
    );
    ensure!(
        m(npcr(&zero, &full))? == 100.0 && m(uaci(&zero, &full))? == 100.0,
        "complement pair not 100"
    );

    let u = keystream_utilization(5, 256);
    ensure!(u == Ratio::new(2, 5), "utilization(5, 256) = {u}");
    Ok("variance 35/12 vs 9/4, entropy 8, NPCR/UACI 0 and 100, utilization 2/5".into())
}

fn oracle_boundary() -> Outcome {
    let manifest = include_str!("../../attack/Cargo.toml");
    let deps = manifest
        .split("[dependencies]")
        .nth(1)
        .and_then(|rest| rest.split("\n[").next())
        .ok_or("attack manifest has no [dependencies] table")?;
    ensure!(
        !deps.contains("chaoscrack-cipher"),
        "attack crate depends on the cipher crate"
    );

    let sources = [
        include_str!("../../attack/src/lib.rs"),
        include_str!("../../attack/src/oracle.rs"),
        include_str!("../../attack/src/probe.rs"),
        include_str!("../../attack/src/mask.rs"),
        include_str!("../../attack/src/index.rs"),
    ];
    for src in sources {
        ensure!(
            !src.contains("KeyMaterial") && !src.contains("chaoscrack_cipher"),
            "attack source names cipher internals"
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xac08);
    let key: KeyMaterial = random_key(&mut rng, 16);
    let img = random_image(&mut rng, 16);
    let mut oracle = CountingOracle::new(KeyedOracle::new(key));
    let enc = oracle
        .encrypt_chosen(&img.to_wide())
        .map_err(|e| e.to_string())?;
    let mut attacker = CountingOracle::new(oracle.into_inner());
    let rec =
        attack::attack_decrypt(&mut attacker, &enc, img.pixel_sum()).map_err(|e| e.to_string())?;
    ensure!(rec == img, "attack through counting wrapper failed");
    ensure!(
        attacker.queries() == 5,
        "counting wrapper saw {} queries",
        attacker.queries()
    );
    Ok("attack crate has no cipher dependency; counting oracle saw 5 queries".into())
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 8] = [
        ("AC1", "round-trip correctness", round_trip),
        (
            "AC2",
            "five-query attack recovers plaintext",
            attack_headline,
        ),
        ("AC3", "stepwise = permute-then-mask", decomposition),
        (
            "AC4",
            "localization, mask and permutation recovery",
            localization,
        ),
        ("AC5", "equivalent-key reuse", key_reuse),
        ("AC6", "weak-key degeneracy", weak_key),
        ("AC7", "metric suite values", metric_values),
        ("AC8", "oracle-boundary hygiene", oracle_boundary),
    ];

    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
