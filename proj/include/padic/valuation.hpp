#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace padic {

/// A p-adic valuation: a non-negative integer or Infinity (the valuation
/// of zero). Infinity absorbs addition and dominates every finite value.
class Valuation {
public:
    constexpr Valuation() : v_(0) {}
    constexpr explicit Valuation(std::uint64_t v) : v_(v) {}

    static constexpr Valuation infinity() {
        Valuation x;
        x.v_ = kInf;
        return x;
    }

    constexpr bool is_infinite() const { return v_ == kInf; }

    std::uint64_t value() const {
        if (is_infinite()) throw std::domain_error("Valuation: value() of Infinity");
        return v_;
    }

    friend constexpr bool operator==(Valuation a, Valuation b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Valuation a, Valuation b) { return a.v_ != b.v_; }
    friend constexpr bool operator<(Valuation a, Valuation b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator<=(Valuation a, Valuation b) { return a == b || a < b; }
    friend constexpr bool operator>(Valuation a, Valuation b) { return b < a; }
    friend constexpr bool operator>=(Valuation a, Valuation b) { return b <= a; }

    friend constexpr Valuation operator+(Valuation a, Valuation b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Valuation(a.v_ + b.v_);
    }

    friend constexpr Valuation min(Valuation a, Valuation b) { return a < b ? a : b; }

    std::string str() const {
        return is_infinite() ? "infinity" : std::to_string(v_);
    }

private:
    static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t v_;
};

}  // namespace padic
