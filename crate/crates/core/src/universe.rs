//! Test universes: the objects and morphisms an exhaustive check ranges over.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::Element;
use crate::finset::{all_functions, function_count, FinFn, FinSet};
use crate::functor::Carrier;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismPolicy {
    All,
    /// At most `per_pair` functions per hom-set, drawn with the universe seed.
    Sample {
        per_pair: usize,
    },
}

#[derive(Clone, Debug)]
pub struct TestUniverse {
    /// Ordered by size, then canonically.
    pub objects: Vec<FinSet>,
    pub max_size: usize,
    pub policy: MorphismPolicy,
    /// Carriers up to this size are listed in full; larger ones are sampled.
    pub element_cap: u128,
    pub samples: usize,
    /// Hom-sets up to this size are listed in full under `MorphismPolicy::All`.
    pub morphism_cap: u128,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct UniverseDescriptor {
    pub sizes: Vec<usize>,
    pub morphisms: String,
    pub element_cap: String,
    pub samples: usize,
    pub seed: u64,
}

impl TestUniverse {
    /// All canonical sets of size `0..=max`, every morphism.
    pub fn sizes(max: usize) -> TestUniverse {
        TestUniverse {
            objects: (0..=max).map(FinSet::canonical).collect(),
            max_size: max,
            policy: MorphismPolicy::All,
            element_cap: 150_000,
            samples: 3_000,
            morphism_cap: 5_000,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> TestUniverse {
        self.seed = seed;
        self
    }

    pub fn with_policy(mut self, policy: MorphismPolicy) -> TestUniverse {
        self.policy = policy;
        self
    }

    pub fn with_element_cap(mut self, cap: u128, samples: usize) -> TestUniverse {
        self.element_cap = cap;
        self.samples = samples;
        self
    }

    pub fn descriptor(&self) -> UniverseDescriptor {
        UniverseDescriptor {
            sizes: self.objects.iter().map(FinSet::len).collect(),
            morphisms: match self.policy {
                MorphismPolicy::All => format!("all (sampled above {})", self.morphism_cap),
                MorphismPolicy::Sample { per_pair } => format!("sample of {per_pair} per hom-set"),
            },
            element_cap: self.element_cap.to_string(),
            samples: self.samples,
            seed: self.seed,
        }
    }

    pub fn describe(&self) -> String {
        let d = self.descriptor();
        format!(
            "sizes {:?}, morphisms {}, carriers listed up to {} elements",
            d.sizes, d.morphisms, d.element_cap
        )
    }

    fn rng(&self, salt: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ stable_hash(salt))
    }

    /// Elements of a carrier; the flag is false when they were sampled.
    pub fn elements(&self, carrier: &Carrier, salt: &str) -> (Vec<Element>, bool) {
        let mut rng = self.rng(&format!("{salt}/{}/{}", carrier.functor, carrier.base));
        carrier.elements(self.element_cap, self.samples, &mut rng)
    }

    /// Functions `x -> y` according to the morphism policy.
    pub fn functions(&self, x: &FinSet, y: &FinSet) -> (Vec<FinFn>, bool) {
        let total = function_count(x.len(), y.len());
        let limit = match self.policy {
            MorphismPolicy::All => self.morphism_cap,
            MorphismPolicy::Sample { per_pair } => per_pair as u128,
        };
        if total <= limit {
            return (all_functions(x, y).collect(), true);
        }
        let mut rng = self.rng(&format!("hom/{x}/{y}"));
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let want = limit as usize;
        let mut attempts = 0;
        while out.len() < want && attempts < want * 20 {
            attempts += 1;
            let table: Vec<Element> = x
                .iter()
                .map(|_| y.elements()[rng.gen_range(0..y.len())].clone())
                .collect();
            if seen.insert(table.clone()) {
                out.push(FinFn::new(x.clone(), y.clone(), table).expect("sampled table"));
            }
        }
        (out, false)
    }
}

/// FNV-1a, so seeds do not depend on the process's hasher state.
pub fn stable_hash(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
