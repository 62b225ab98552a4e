#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace grounded {

/// Unsigned arbitrary-precision integer over base-1e9 limbs. The bound
/// recurrence is double exponential in the clique number, so fixed-width
/// arithmetic overflows already at small k.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::uint64_t v);  // NOLINT: implicit by design

    static BigInt from_decimal(const std::string& digits);

    bool is_zero() const { return limbs_.empty(); }
    std::string to_string() const;
    /// Value as uint64 when it fits, for desk-scale thresholds.
    bool fits_u64(std::uint64_t* out) const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.limbs_ == b.limbs_; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b);
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a < b || a == b; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return b <= a; }

    /// 2^e as a BigInt.
    static BigInt pow2(unsigned e);

private:
    // little-endian limbs, no trailing zeros; empty means zero
    std::vector<std::uint32_t> limbs_;
    void trim();
};

/// The bound recurrence values for clique numbers 1..k_max:
///   xi_1 = 1
///   beta_k = 8 k xi_{k-1}^2
///   delta_{k,k} = 0
///   delta_{k,j} = beta_k + 2 delta_{k,j+1} + 2 xi_{k-1} (k xi_{k-1} + k + 2) + 2
///   xi_k = 2^{k+2} (delta_{k,0} + 2 xi_{k-1} + 1)
struct BoundTable {
    int k_max = 0;
    std::vector<BigInt> xi;                  // xi[k], valid for 1 <= k <= k_max
    std::vector<BigInt> beta;                // beta[k], valid for 2 <= k <= k_max
    std::vector<std::vector<BigInt>> delta;  // delta[k][j], 0 <= j <= k, for 2 <= k <= k_max

    std::string to_text() const;  // aligned decimal table
};

BoundTable compute_bounds(int k_max);

}  // namespace grounded
