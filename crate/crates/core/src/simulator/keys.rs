use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mixed-radix split of a key index. The shared part occupies the
/// high-order digit: `k = shared * radix_rest + rest`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KeySplit {
    pub shared: usize,
    pub rest: usize,
}

pub fn split_key(k: usize, m_gamma: usize, radix_rest: usize) -> Result<KeySplit> {
    if radix_rest == 0 || m_gamma == 0 || k >= m_gamma * radix_rest {
        return Err(Error::Domain {
            value: k as f64,
            domain: "[0, m_gamma * radix_rest)",
        });
    }
    Ok(KeySplit {
        shared: k / radix_rest,
        rest: k % radix_rest,
    })
}

pub fn join_key(ks: KeySplit, m_gamma: usize, radix_rest: usize) -> Result<usize> {
    if ks.shared >= m_gamma || ks.rest >= radix_rest {
        return Err(Error::Domain {
            value: (ks.shared * radix_rest.max(1) + ks.rest) as f64,
            domain: "[0, m_gamma * radix_rest)",
        });
    }
    Ok(ks.shared * radix_rest + ks.rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn split_examples() {
        assert_eq!(split_key(0, 4, 8).unwrap(), KeySplit { shared: 0, rest: 0 });
        for k in 0..5 {
            assert_eq!(split_key(k, 5, 1).unwrap(), KeySplit { shared: k, rest: 0 });
        }
        assert_eq!(
            split_key(19, 4, 8).unwrap(),
            KeySplit { shared: 2, rest: 3 }
        );
        assert!(split_key(32, 4, 8).is_err());
        assert!(join_key(KeySplit { shared: 4, rest: 0 }, 4, 8).is_err());
        assert!(join_key(KeySplit { shared: 0, rest: 8 }, 4, 8).is_err());
    }

    proptest! {
        #[test]
        fn split_join_bijection(m_gamma in 1usize..64, radix in 1usize..64, seed in any::<u64>()) {
            let k = (seed % (m_gamma * radix) as u64) as usize;
            let ks = split_key(k, m_gamma, radix).unwrap();
            prop_assert_eq!(join_key(ks, m_gamma, radix).unwrap(), k);
        }
    }
}
