/// Enumeration limits shared by every operation that searches or lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `n` for which all partitions of `n` may be listed.
    pub max_size: usize,
    /// Largest p-weight a block enumeration or core-profile search may reach.
    pub max_weight: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_size: 60,
            max_weight: 64,
        }
    }
}

impl Bounds {
    pub fn with_max_size(max_size: usize) -> Self {
        Bounds {
            max_size,
            ..Self::default()
        }
    }
}

/// Accepts any odd modulus `>= 3`; primality is checked separately.
pub fn check_modulus(p: usize) -> crate::Result<()> {
    if p >= 3 && p % 2 == 1 {
        Ok(())
    } else {
        Err(crate::Error::InvalidModulus(p))
    }
}

pub fn check_prime(p: usize) -> crate::Result<()> {
    check_modulus(p)?;
    if (3..)
        .step_by(2)
        .take_while(|d| d * d <= p)
        .any(|d| p.is_multiple_of(d))
    {
        return Err(crate::Error::NotPrime(p));
    }
    Ok(())
}
