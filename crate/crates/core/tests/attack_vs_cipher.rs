use chaoscrack::attack::{run_attack, CountingOracle};
use chaoscrack::cipher::{build_mask, derive_schedule, encrypt, permutation_for};
use chaoscrack::fixtures::{random_image, random_key};
use chaoscrack::KeyedOracle;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn attack_matches_cipher_internals(side in 4usize..=96, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let key = random_key(&mut rng, side);
        let plain = random_image(&mut rng, side);
        let eta = plain.pixel_sum();
        prop_assume!(eta >= 1);

        let mut oracle = CountingOracle::new(KeyedOracle::new(key.clone()));
        let t = run_attack(&mut oracle, eta, side, side).unwrap();
        prop_assert_eq!(oracle.queries(), 5);

        let s = derive_schedule(&key, eta, side, side).unwrap();
        prop_assert_eq!(t.key.position, (s.u, s.v));
        prop_assert_eq!(&t.key.mask, &build_mask(&key, eta, side, side).unwrap());
        let perm = permutation_for(&key, eta, side, side).unwrap();
        prop_assert_eq!(t.key.permutation.as_slice(), &perm.inverse()[..]);

        let c = encrypt(&plain, &key).unwrap().cipher;
        prop_assert_eq!(t.key.decrypt(&c).unwrap(), plain);
    }
}
