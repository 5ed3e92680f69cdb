#include "online/analysis.hpp"

#include <algorithm>
#include <set>

namespace online::analysis {

namespace {

// k/m in lowest terms; the two-argument constructor leaves it as given
Rational fraction(std::size_t k, std::size_t m) {
    Rational r(static_cast<unsigned long>(k), static_cast<unsigned long>(m));
    r.canonicalize();
    return r;
}

Rational floor_scaled(const Rational& x, std::size_t bits) {
    const Rational scaled = x * pow2(static_cast<long>(bits));
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational out(q, pow2(static_cast<long>(bits)).get_num());
    out.canonicalize();
    return out;
}

void check_unit(const Rational& x) {
    if (x < 0 || x > 1) {
        throw InvalidArgument(to_string(x) + " is outside [0, 1]");
    }
}

} // namespace

FastCauchyName FastCauchyName::from_sequence(std::vector<Rational> values) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (abs(values[i] - values[i + 1]) >= pow2(-static_cast<long>(i))) {
            throw NotFast(i);
        }
    }
    FastCauchyName name;
    name.values_ = std::move(values);
    return name;
}

FastCauchyName make_dyadic_name(const Rational& x, std::size_t horizon) {
    check_unit(x);
    if (!is_dyadic(x)) {
        throw InvalidArgument(to_string(x) + " is not dyadic");
    }
    return FastCauchyName::from_sequence(std::vector<Rational>(horizon, x));
}

FastCauchyName truncation_name(const Rational& x, std::size_t horizon) {
    check_unit(x);
    std::vector<Rational> values;
    values.reserve(horizon);
    for (std::size_t i = 0; i < horizon; ++i) {
        values.push_back(floor_scaled(x, i + 1));
    }
    return FastCauchyName::from_sequence(std::move(values));
}

FastCauchyName add_with_delay(const FastCauchyName& a, const FastCauchyName& b) {
    const std::size_t shortest = std::min(a.horizon(), b.horizon());
    std::vector<Rational> values;
    for (std::size_t i = 0; i + 2 < shortest; ++i) {
        values.push_back(a.at(i + 2) + b.at(i + 2));
    }
    return FastCauchyName::from_sequence(std::move(values));
}

IntervalFunctional identity_functional() {
    return {"x", [](const RationalInterval& j) { return j; }};
}

IntervalFunctional square_functional() {
    return {"x^2", [](const RationalInterval& j) {
                const Rational a = j.lo * j.lo;
                const Rational b = j.hi * j.hi;
                if (j.lo >= 0) {
                    return RationalInterval{a, b};
                }
                if (j.hi <= 0) {
                    return RationalInterval{b, a};
                }
                return RationalInterval{Rational(0), std::max(a, b)};
            }};
}

IntervalFunctional distance_functional(Rational c) {
    return {"|x-" + to_string(c) + "|", [c](const RationalInterval& j) {
                if (j.lo >= c) {
                    return RationalInterval{j.lo - c, j.hi - c};
                }
                if (j.hi <= c) {
                    return RationalInterval{c - j.hi, c - j.lo};
                }
                return RationalInterval{Rational(0), std::max(Rational(c - j.lo), Rational(j.hi - c))};
            }};
}

IntervalFunctional sine_like_functional() {
    auto p = [](const Rational& x) -> Rational {
        const Rational x2 = x * x;
        const Rational x3 = x2 * x;
        return x - x3 / 6 + x3 * x2 / 120;
    };
    return {"x-x^3/6+x^5/120", [p](const RationalInterval& j) {
                check_unit(j.lo);
                check_unit(j.hi);
                return RationalInterval{p(j.lo), p(j.hi)};
            }};
}

FunctionalValue apply_functional(const IntervalFunctional& f, const FastCauchyName& x, std::size_t j) {
    // x lies within 2^(-i+1) of r_i
    const Rational target = pow2(-static_cast<long>(j) - 1);
    for (std::size_t i = 0; i < x.horizon(); ++i) {
        const Rational radius = pow2(1 - static_cast<long>(i));
        RationalInterval ball{std::max(Rational(0), Rational(x.at(i) - radius)), std::min(Rational(1), Rational(x.at(i) + radius))};
        if (ball.lo > ball.hi) {
            throw InvalidArgument("name term " + std::to_string(i) + " is far outside [0, 1]");
        }
        const RationalInterval image = f(ball);
        if (image.width() < target) {
            return {image.midpoint(), i};
        }
    }
    throw InvalidArgument("name of horizon " + std::to_string(x.horizon()) + " is too short for term " +
                          std::to_string(j));
}

FastCauchyName image_name(const IntervalFunctional& f, const FastCauchyName& x, std::size_t horizon) {
    std::vector<Rational> values;
    values.reserve(horizon);
    for (std::size_t j = 0; j < horizon; ++j) {
        values.push_back(apply_functional(f, x, j).value);
    }
    return FastCauchyName::from_sequence(std::move(values));
}

Rational PLApproximant::operator()(const Rational& x) const {
    if (xs.size() < 2 || x < xs.front() || x > xs.back()) {
        throw InvalidArgument("approximant evaluated outside its breakpoints");
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (i == xs.size()) {
        return ys.back();
    }
    const std::size_t left = i - 1;
    const Rational t = (x - xs[left]) / (xs[i] - xs[left]);
    return ys[left] + t * (ys[i] - ys[left]);
}

PLApproximant approximate(const IntervalFunctional& f, std::size_t n, std::size_t depth_cap) {
    const Rational target = pow2(1 - static_cast<long>(n));
    PLApproximant h;
    h.n = n;
    h.budget = pow2(2 - static_cast<long>(n));

    std::vector<Rational> centres;
    struct Piece {
        Rational lo;
        Rational hi;
        std::size_t depth;
    };
    std::vector<Piece> stack{{Rational(0), Rational(1), 0}};
    while (!stack.empty()) {
        Piece piece = std::move(stack.back());
        stack.pop_back();
        if (f({piece.lo, piece.hi}).width() < target) {
            centres.push_back((piece.lo + piece.hi) / 2);
            h.depth = std::max(h.depth, piece.depth);
            ++h.pieces;
            continue;
        }
        if (piece.depth >= depth_cap) {
            throw ApproximationStuck({piece.lo, piece.hi});
        }
        const Rational mid = (piece.lo + piece.hi) / 2;
        // right half first so the left half is processed next
        stack.push_back({mid, piece.hi, piece.depth + 1});
        stack.push_back({piece.lo, mid, piece.depth + 1});
    }

    h.xs.push_back(Rational(0));
    h.xs.insert(h.xs.end(), centres.begin(), centres.end());
    h.xs.push_back(Rational(1));
    for (const auto& x : h.xs) {
        h.ys.push_back(f.at(x).midpoint());
    }
    return h;
}

ErrorCertificate certify_error(const IntervalFunctional& f, const PLApproximant& h, std::size_t samples) {
    if (samples == 0) {
        throw InvalidArgument("need at least one sample");
    }
    std::set<Rational> points;
    for (std::size_t k = 0; k <= samples; ++k) {
        points.insert(fraction(k, samples));
    }
    for (std::size_t i = 0; i + 1 < h.xs.size(); ++i) {
        points.insert(h.xs[i]);
        points.insert((h.xs[i] + h.xs[i + 1]) / 2);
        points.insert(h.xs[i + 1]);
    }
    ErrorCertificate cert;
    for (const auto& x : points) {
        const RationalInterval fx = f.at(x);
        const Rational error = abs(fx.midpoint() - h(x)) + fx.width() / 2;
        cert.measured = std::max(cert.measured, error);
        if (error > h.budget && !cert.offending) {
            cert.pass = false;
            cert.offending = x;
        }
        ++cert.samples;
    }
    return cert;
}

Rational BernsteinPolynomial::operator()(const Rational& x) const {
    if (values.empty()) {
        throw InvalidArgument("empty Bernstein polynomial");
    }
    const std::size_t d = values.size() - 1;
    Rational sum = 0;
    mpz_class binom = 1;
    for (std::size_t k = 0; k <= d; ++k) {
        Rational term = values[k] * Rational(binom);
        for (std::size_t e = 0; e < k; ++e) {
            term *= x;
        }
        for (std::size_t e = 0; e < d - k; ++e) {
            term *= (1 - x);
        }
        sum += term;
        binom = binom * static_cast<unsigned long>(d - k) / static_cast<unsigned long>(k + 1);
    }
    return sum;
}

BernsteinPolynomial bernstein(const PLApproximant& h, std::size_t degree) {
    if (degree == 0) {
        throw InvalidArgument("Bernstein degree must be positive");
    }
    BernsteinPolynomial p;
    for (std::size_t k = 0; k <= degree; ++k) {
        p.values.push_back(h(fraction(k, degree)));
    }
    return p;
}

void write_approximant_csv(std::ostream& out, const PLApproximant& h) {
    out << "# n=" << h.n << '\n' << "# budget=" << to_string(h.budget) << '\n' << "x,y\n";
    for (std::size_t i = 0; i < h.xs.size(); ++i) {
        out << to_string(h.xs[i]) << ',' << to_string(h.ys[i]) << '\n';
    }
}

PLApproximant read_approximant_csv(std::istream& in) {
    PLApproximant h;
    bool have_n = false;
    bool have_budget = false;
    bool have_header = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.rfind("# n=", 0) == 0) {
            try {
                h.n = std::stoul(line.substr(4));
            } catch (const std::exception&) {
                throw ParseError("bad precision line: " + line);
            }
            have_n = true;
        } else if (line.rfind("# budget=", 0) == 0) {
            h.budget = parse_rational(line.substr(9));
            have_budget = true;
        } else if (line == "x,y") {
            have_header = true;
        } else {
            const auto comma = line.find(',');
            if (!have_header || comma == std::string::npos) {
                throw ParseError("unexpected line: " + line);
            }
            h.xs.push_back(parse_rational(line.substr(0, comma)));
            h.ys.push_back(parse_rational(line.substr(comma + 1)));
        }
    }
    if (!have_n || !have_budget || !have_header) {
        throw ParseError("approximant file lacks its n, budget or column header");
    }
    if (h.xs.size() < 2 || h.xs.front() != 0 || h.xs.back() != 1 ||
        std::adjacent_find(h.xs.begin(), h.xs.end(), std::greater_equal<>()) != h.xs.end()) {
        throw ParseError("breakpoints must increase strictly from 0 to 1");
    }
    h.pieces = h.xs.size() - 2;
    return h;
}

} // namespace online::analysis
