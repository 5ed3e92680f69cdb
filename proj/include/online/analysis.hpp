#pragma once

#include "online/error.hpp"
#include "online/rational.hpp"

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace online::analysis {

/// Closed rational interval [lo, hi].
struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const RationalInterval& other) const { return lo <= other.lo && other.hi <= hi; }
    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// A sequence of rationals with |r_i - r_{i+1}| < 2^-i, 0-indexed.
class FastCauchyName {
public:
    /// Throws NotFast naming the first i that breaks the inequality.
    static FastCauchyName from_sequence(std::vector<Rational> values);

    std::size_t horizon() const noexcept { return values_.size(); }
    const Rational& at(std::size_t i) const { return values_.at(i); }
    const std::vector<Rational>& values() const noexcept { return values_; }

private:
    std::vector<Rational> values_;
};

class NotFast : public Error {
public:
    explicit NotFast(std::size_t index)
        : Error("|r_" + std::to_string(index) + " - r_" + std::to_string(index + 1) + "| is not below 2^-" +
                std::to_string(index)),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Constant name of a dyadic x in [0,1]. Throws InvalidArgument otherwise.
FastCauchyName make_dyadic_name(const Rational& x, std::size_t horizon);
/// r_i = floor(x 2^(i+1)) / 2^(i+1); any rational x in [0,1].
FastCauchyName truncation_name(const Rational& x, std::size_t horizon);
/// c_i = a_(i+2) + b_(i+2): addition reading two extra terms.
FastCauchyName add_with_delay(const FastCauchyName& a, const FastCauchyName& b);

/// Inclusion-monotone enclosure of f over subintervals of [0,1].
struct IntervalFunctional {
    std::string name;
    std::function<RationalInterval(const RationalInterval&)> evaluate;

    RationalInterval operator()(const RationalInterval& j) const { return evaluate(j); }
    RationalInterval at(const Rational& x) const { return evaluate({x, x}); }
};

IntervalFunctional identity_functional();
IntervalFunctional square_functional();
/// |x - c|
IntervalFunctional distance_functional(Rational c);
/// x - x^3/6 + x^5/120, increasing on [0,1].
IntervalFunctional sine_like_functional();

struct FunctionalValue {
    Rational value;     ///< within 2^-(j+2) of f(x)
    std::size_t use = 0; ///< index of the last name term read
};

/// Term j of a fast name of f(x), read off the name of x. Throws
/// InvalidArgument when the name is too short to reach the precision.
FunctionalValue apply_functional(const IntervalFunctional& f, const FastCauchyName& x, std::size_t j);

/// Name of f(x) up to `horizon` terms.
FastCauchyName image_name(const IntervalFunctional& f, const FastCauchyName& x, std::size_t horizon);

/// Piecewise-linear h_n through (z_i, y_i), with its error budget.
struct PLApproximant {
    std::size_t n = 0;
    Rational budget;
    std::vector<Rational> xs; ///< strictly increasing, from 0 to 1
    std::vector<Rational> ys;
    std::size_t depth = 0;  ///< deepest bisection used
    std::size_t pieces = 0; ///< pieces of the cover

    Rational operator()(const Rational& x) const;
};

/// No piece of the cover reached the width condition within the depth cap.
class ApproximationStuck : public Error {
public:
    explicit ApproximationStuck(RationalInterval piece)
        : Error("bisection stuck on [" + to_string(piece.lo) + ", " + to_string(piece.hi) + "]"),
          piece_(std::move(piece)) {}

    const RationalInterval& piece() const noexcept { return piece_; }

private:
    RationalInterval piece_;
};

inline constexpr std::size_t kDefaultDepthCap = 40;

/// Bisects [0,1] into dyadic pieces J with width(f(J)) < 2^(-n+1), then
/// joins (0, f(0)), the piece centres and (1, f(1)) using the midpoint of f
/// at each point. Adjacent pieces share an endpoint, so the join is within
/// 2^(-n+2) of f everywhere.
PLApproximant approximate(const IntervalFunctional& f, std::size_t n, std::size_t depth_cap = kDefaultDepthCap);

struct ErrorCertificate {
    bool pass = true;
    Rational measured{0};             ///< max of |mid f(x) - h(x)| + half width of f(x)
    std::optional<Rational> offending; ///< first sample above the budget
    std::size_t samples = 0;
};

/// Samples a uniform grid of `samples` + 1 points together with both ends
/// and the midpoint of every breakpoint gap.
ErrorCertificate certify_error(const IntervalFunctional& f, const PLApproximant& h, std::size_t samples);

/// Bernstein polynomial of the given degree for h. Smoothing only; it
/// carries no certificate.
struct BernsteinPolynomial {
    std::vector<Rational> values; ///< h(k/degree), k = 0..degree

    Rational operator()(const Rational& x) const;
};

BernsteinPolynomial bernstein(const PLApproximant& h, std::size_t degree);

/// "# n=<n>", "# budget=<p/q>", then "x,y" and one line per breakpoint.
void write_approximant_csv(std::ostream& out, const PLApproximant& h);
PLApproximant read_approximant_csv(std::istream& in);

} // namespace online::analysis
