use crate::scalar::{pairwise_sum, pairwise_sum_by, Real};

/// A function on the shift space, known only through finite words.
///
/// `eval(w)` approximates `f(omega)` for every `omega` in the cylinder `[w]`;
/// `error_bound(w.len())` bounds the approximation error uniformly over the
/// cylinder. The bound must be nonincreasing in the word length.
pub trait WordFunction<T: Real>: Send + Sync {
    fn eval(&self, word: &[u8]) -> T;

    fn error_bound(&self, len: usize) -> T;
}

/// `f(omega) = values[omega_1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstSymbolFunction<T> {
    pub values: Vec<T>,
}

impl<T: Real> WordFunction<T> for FirstSymbolFunction<T> {
    fn eval(&self, word: &[u8]) -> T {
        self.values[word[0] as usize]
    }

    fn error_bound(&self, _len: usize) -> T {
        T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantFunction<T>(pub T);

impl<T: Real> WordFunction<T> for ConstantFunction<T> {
    fn eval(&self, _word: &[u8]) -> T {
        self.0
    }

    fn error_bound(&self, _len: usize) -> T {
        T::zero()
    }
}

/// Adapts closures to [`WordFunction`].
pub struct FnWordFunction<F, B> {
    pub eval: F,
    pub bound: B,
}

impl<T, F, B> WordFunction<T> for FnWordFunction<F, B>
where
    T: Real,
    F: Fn(&[u8]) -> T + Send + Sync,
    B: Fn(usize) -> T + Send + Sync,
{
    fn eval(&self, word: &[u8]) -> T {
        (self.eval)(word)
    }

    fn error_bound(&self, len: usize) -> T {
        (self.bound)(len)
    }
}

/// `sum_{k=0}^{n-1} f(w_{k+1} ... w_n)`: the Birkhoff sum with each shift
/// truncated to the remaining suffix.
pub fn birkhoff_sum<T: Real, F: WordFunction<T> + ?Sized>(f: &F, word: &[u8]) -> T {
    let terms: Vec<T> = (0..word.len()).map(|k| f.eval(&word[k..])).collect();
    pairwise_sum(&terms)
}

/// Uniform bound on `|n A_n f(omega) - birkhoff_sum(f, w)|` over `omega in [w]`.
pub fn birkhoff_error_bound<T: Real, F: WordFunction<T> + ?Sized>(f: &F, n: usize) -> T {
    pairwise_sum_by(n, |k| f.error_bound(n - k))
}

/// `2 * error_bound(n)`, an upper bound for `var_n` of the induced function.
pub fn variation_bound<T: Real, F: WordFunction<T> + ?Sized>(f: &F, n: usize) -> T {
    f.error_bound(n) * T::lit(2.0)
}

/// Bound on `var_n A_n f`: the oscillation of the Birkhoff average over an
/// `n`-cylinder.
pub fn birkhoff_variation_slack<T: Real, F: WordFunction<T> + ?Sized>(f: &F, n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    birkhoff_error_bound(f, n) * T::lit(2.0) / T::from_usize_lossy(n)
}
