#include "grounded/bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "grounded/error.hpp"

namespace grounded {

namespace {
constexpr std::uint32_t kBase = 1'000'000'000u;
}

BigInt::BigInt(std::uint64_t v) {
    while (v) {
        limbs_.push_back(std::uint32_t(v % kBase));
        v /= kBase;
    }
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigInt BigInt::from_decimal(const std::string& digits) {
    if (digits.empty()) fail(Errc::parse_error, "empty integer literal");
    BigInt out;
    for (int end = int(digits.size()); end > 0; end -= 9) {
        int begin = std::max(0, end - 9);
        std::uint32_t limb = 0;
        for (int i = begin; i < end; ++i) {
            char c = digits[std::size_t(i)];
            if (c < '0' || c > '9') fail(Errc::parse_error, "bad digit in integer literal");
            limb = limb * 10 + std::uint32_t(c - '0');
        }
        out.limbs_.push_back(limb);
    }
    out.trim();
    return out;
}

std::string BigInt::to_string() const {
    if (limbs_.empty()) return "0";
    std::ostringstream os;
    os << limbs_.back();
    for (int i = int(limbs_.size()) - 2; i >= 0; --i)
        os << std::setw(9) << std::setfill('0') << limbs_[std::size_t(i)];
    return os.str();
}

bool BigInt::fits_u64(std::uint64_t* out) const {
    std::uint64_t v = 0;
    if (limbs_.size() > 3) return false;
    for (int i = int(limbs_.size()) - 1; i >= 0; --i) {
        if (v > (~0ull - limbs_[std::size_t(i)]) / kBase) return false;
        v = v * kBase + limbs_[std::size_t(i)];
    }
    if (out) *out = v;
    return true;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt out;
    out.limbs_.reserve(std::max(a.limbs_.size(), b.limbs_.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.limbs_.size(), b.limbs_.size()) || carry; ++i) {
        std::uint64_t v = carry;
        if (i < a.limbs_.size()) v += a.limbs_[i];
        if (i < b.limbs_.size()) v += b.limbs_[i];
        out.limbs_.push_back(std::uint32_t(v % kBase));
        carry = v / kBase;
    }
    out.trim();
    return out;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt out;
    if (a.is_zero() || b.is_zero()) return out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size() || carry; ++j) {
            std::uint64_t v = out.limbs_[i + j] + carry;
            if (j < b.limbs_.size()) v += std::uint64_t(a.limbs_[i]) * b.limbs_[j];
            out.limbs_[i + j] = std::uint32_t(v % kBase);
            carry = v / kBase;
        }
    }
    out.trim();
    return out;
}

bool operator<(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
    for (int i = int(a.limbs_.size()) - 1; i >= 0; --i)
        if (a.limbs_[std::size_t(i)] != b.limbs_[std::size_t(i)])
            return a.limbs_[std::size_t(i)] < b.limbs_[std::size_t(i)];
    return false;
}

BigInt BigInt::pow2(unsigned e) {
    BigInt out(1);
    BigInt two(2);
    for (unsigned i = 0; i < e; ++i) out = out * two;
    return out;
}

BoundTable compute_bounds(int k_max) {
    if (k_max < 1) fail(Errc::validation, "k_max must be at least 1");
    BoundTable t;
    t.k_max = k_max;
    t.xi.assign(std::size_t(k_max) + 1, BigInt());
    t.beta.assign(std::size_t(k_max) + 1, BigInt());
    t.delta.assign(std::size_t(k_max) + 1, {});
    t.xi[1] = BigInt(1);
    for (int k = 2; k <= k_max; ++k) {
        const BigInt& prev = t.xi[std::size_t(k - 1)];
        t.beta[std::size_t(k)] = BigInt(8) * BigInt(std::uint64_t(k)) * prev * prev;
        auto& delta = t.delta[std::size_t(k)];
        delta.assign(std::size_t(k) + 1, BigInt());
        // filler term shared by every level: 2 xi_{k-1} (k xi_{k-1} + k + 2) + 2
        BigInt filler =
            BigInt(2) * prev * (BigInt(std::uint64_t(k)) * prev + BigInt(std::uint64_t(k) + 2)) +
            BigInt(2);
        for (int j = k - 1; j >= 0; --j)
            delta[std::size_t(j)] =
                t.beta[std::size_t(k)] + BigInt(2) * delta[std::size_t(j) + 1] + filler;
        t.xi[std::size_t(k)] =
            BigInt::pow2(unsigned(k) + 2) * (delta[0] + BigInt(2) * prev + BigInt(1));
    }
    return t;
}

std::string BoundTable::to_text() const {
    std::size_t width = 2;
    auto widen = [&width](const BigInt& v) { width = std::max(width, v.to_string().size()); };
    for (int k = 1; k <= k_max; ++k) widen(xi[std::size_t(k)]);
    for (int k = 2; k <= k_max; ++k) {
        widen(beta[std::size_t(k)]);
        for (const auto& d : delta[std::size_t(k)]) widen(d);
    }
    std::ostringstream os;
    for (int k = 1; k <= k_max; ++k) {
        os << "k=" << k << "\n";
        if (k >= 2)
            os << "  beta_" << k << "     = " << std::setw(int(width))
               << beta[std::size_t(k)].to_string() << "\n";
        if (k >= 2)
            for (int j = k; j >= 0; --j)
                os << "  delta_" << k << "," << j << (j >= 10 ? " = " : "  = ")
                   << std::setw(int(width)) << delta[std::size_t(k)][std::size_t(j)].to_string()
                   << "\n";
        os << "  xi_" << k << "       = " << std::setw(int(width))
           << xi[std::size_t(k)].to_string() << "\n";
    }
    return os.str();
}

}  // namespace grounded
