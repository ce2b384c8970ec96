use chaoscrack_cipher::{
    build_mask, decrypt, derive_schedule, encrypt, encrypt_stepwise, encrypt_wide, permutation_for,
    KeyMaterial,
};
use chaoscrack_image::{mod256_add, Image, WideImage};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_key(rng: &mut impl Rng, side: usize) -> KeyMaterial {
    KeyMaterial {
        a: rng.gen_range(0..side as u64),
        b: rng.gen_range(0..side as u64),
        x0: rng.gen_range(0.0..=1.0),
        y0: rng.gen_range(0.0..=1.0),
        z0: rng.gen_range(0.0..=1.0),
        mu: rng.gen_range(0.01..0.99),
        r: rng.gen_range(3.57..=4.0),
        s0: [
            rng.gen_range(0.0..256.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..1.0),
        ],
        n: rng.gen_range(1..2000),
    }
}

fn random_image(rng: &mut impl Rng, side: usize) -> Image {
    Image::from_fn(side, side, |_, _| rng.gen()).unwrap()
}

#[test]
fn stepwise_and_decomposed_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..60 {
        let side = [2, 3, 5, 8, 16, 17][trial % 6];
        let key = random_key(&mut rng, side);
        let img = random_image(&mut rng, side);
        let a = encrypt(&img, &key).unwrap();
        let b = encrypt_stepwise(&img.to_wide(), &key).unwrap();
        assert_eq!(a, b, "trial {trial}");
    }
}

#[test]
fn round_trip_random_8x8() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let key = random_key(&mut rng, 8);
        let img = random_image(&mut rng, 8);
        let enc = encrypt(&img, &key).unwrap();
        assert_eq!(enc.eta, img.pixel_sum());
        assert_eq!(decrypt(&enc.cipher, &key, enc.eta).unwrap(), img);
    }
}

#[test]
fn wrong_sum_breaks_decryption() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let key = random_key(&mut rng, 8);
    let img = random_image(&mut rng, 8);
    let enc = encrypt(&img, &key).unwrap();
    let wrong = decrypt(&enc.cipher, &key, enc.eta + 64).unwrap();
    assert_ne!(wrong, img);
}

#[test]
fn zero_image_under_weak_seed_encrypts_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut key = random_key(&mut rng, 16);
    key.s0[0] = 128.0;
    let zero = Image::filled(16, 16, 0).unwrap();
    assert_eq!(encrypt(&zero, &key).unwrap().cipher, zero);
    assert_eq!(
        decrypt(
            &zero,
            &{
                let mut k = key.clone();
                k.a = 0;
                k.b = 0;
                k
            },
            0
        )
        .unwrap(),
        zero
    );
}

#[test]
fn weak_seed_without_arnold_is_a_single_swap() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let mut key = random_key(&mut rng, 12);
        key.s0[0] = 128.0;
        key.a = 0;
        key.b = 0;
        let img = random_image(&mut rng, 12);
        let s = derive_schedule(&key, img.pixel_sum(), 12, 12).unwrap();
        let mut expected = img.clone().into_pixels();
        expected.swap(0, s.u * 12 + s.v);
        assert_eq!(encrypt(&img, &key).unwrap().cipher.pixels(), &expected[..]);
    }
}

#[test]
fn single_spike_probe_differs_from_mask_only_at_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let key = random_key(&mut rng, 16);
        let mut probe = WideImage::zeros(16, 16).unwrap();
        probe.set(0, 0, 575);
        let cipher = encrypt_wide(&probe, &key).unwrap().cipher;
        let mask = build_mask(&key, 575, 16, 16).unwrap();
        let s = derive_schedule(&key, 575, 16, 16).unwrap();
        for (k, (&c, &p)) in cipher
            .pixels()
            .iter()
            .zip(mask.as_image().pixels())
            .enumerate()
        {
            if k == s.u * 16 + s.v {
                assert_eq!(c, mod256_add(i64::from(p), 575));
            } else {
                assert_eq!(c, p);
            }
        }
    }
}

#[test]
fn equal_sums_share_mask_and_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let key = random_key(&mut rng, 8);
        let a = random_image(&mut rng, 8);
        // Same multiset of pixels, different arrangement: identical sum.
        let mut shuffled = a.clone().into_pixels();
        shuffled.reverse();
        let b = Image::new(8, 8, shuffled).unwrap();
        let ca = encrypt(&a, &key).unwrap().cipher;
        let cb = encrypt(&b, &key).unwrap().cipher;
        let perm = permutation_for(&key, a.pixel_sum(), 8, 8).unwrap();
        let diff: Vec<i64> = a
            .pixels()
            .iter()
            .zip(b.pixels())
            .map(|(&x, &y)| i64::from(x) - i64::from(y))
            .collect();
        let moved = perm.apply(&diff);
        for k in 0..64 {
            let got = mod256_add(i64::from(ca.pixels()[k]), -i64::from(cb.pixels()[k]));
            assert_eq!(got, mod256_add(moved[k], 0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decrypt_inverts_encrypt(seed in any::<u64>(), side in 2usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let key = random_key(&mut rng, side);
        let img = random_image(&mut rng, side);
        let enc = encrypt(&img, &key).unwrap();
        prop_assert_eq!(decrypt(&enc.cipher, &key, enc.eta).unwrap(), img);
    }

    #[test]
    fn origin_goes_to_split_point(seed in any::<u64>(), side in 2usize..40, eta in 0i64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let key = random_key(&mut rng, side);
        let s = derive_schedule(&key, eta, side, side).unwrap();
        let perm = permutation_for(&key, eta, side, side).unwrap();
        prop_assert_eq!(perm.dest(0), s.u * side + s.v);
    }
}
