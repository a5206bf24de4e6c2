#include "polyineq/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace polyineq {

namespace {

bool finite(Complex c)
{
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

std::vector<Complex> trimmed(std::vector<Complex> coeffs)
{
    if (coeffs.empty())
        throw std::invalid_argument("polynomial needs at least one coefficient");
    for (const Complex& c : coeffs)
        if (!finite(c))
            throw std::invalid_argument("polynomial coefficients must be finite");
    while (coeffs.size() > 1 && coeffs.back() == Complex{})
        coeffs.pop_back();
    return coeffs;
}

} // namespace

Polynomial::Polynomial() : coeffs_{Complex{}}, declared_degree_(0) {}

Polynomial::Polynomial(std::vector<Complex> coeffs)
    : coeffs_(trimmed(std::move(coeffs)))
{
    declared_degree_ = static_cast<int>(coeffs_.size()) - 1;
}

Polynomial::Polynomial(std::vector<Complex> coeffs, int declared_degree)
    : coeffs_(trimmed(std::move(coeffs))), declared_degree_(declared_degree)
{
    if (declared_degree_ < 0)
        throw std::invalid_argument("declared degree must be nonnegative");
    if (declared_degree_ < numeric_degree())
        throw std::invalid_argument("declared degree below numeric degree");
}

int Polynomial::numeric_degree() const
{
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
        if (coeffs_[static_cast<std::size_t>(k)] != Complex{})
            return k;
    return -1;
}

Complex Polynomial::coeff(int k) const
{
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
        return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::coeff_inf_norm() const
{
    double m = 0.0;
    for (const Complex& c : coeffs_)
        m = std::max(m, std::abs(c));
    return m;
}

Polynomial Polynomial::with_declared_degree(int n) const
{
    return Polynomial(coeffs_, n);
}

Complex eval(const Polynomial& p, Complex z)
{
    const auto& a = p.coeffs();
    Complex acc = a.back();
    for (std::size_t k = a.size() - 1; k-- > 0;)
        acc = acc * z + a[k];
    return acc;
}

Polynomial derivative(const Polynomial& p)
{
    const auto& a = p.coeffs();
    std::vector<Complex> d;
    if (a.size() > 1) {
        d.reserve(a.size() - 1);
        for (std::size_t k = 1; k < a.size(); ++k)
            d.push_back(static_cast<double>(k) * a[k]);
    } else {
        d.push_back({});
    }
    return Polynomial(std::move(d), std::max(p.declared_degree() - 1, 0));
}

Polynomial polar_derivative(const Polynomial& p, Complex alpha)
{
    const int n = p.declared_degree();
    if (n < 1)
        throw std::domain_error(
            "polar derivative of a degree-0 polynomial is the zero map; "
            "no degree-(n-1) object exists");
    std::vector<Complex> c(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        c[static_cast<std::size_t>(k)] =
            static_cast<double>(n - k) * p.coeff(k) +
            alpha * static_cast<double>(k + 1) * p.coeff(k + 1);
    return Polynomial(std::move(c), n - 1);
}

Polynomial conj_reciprocal(const Polynomial& p)
{
    const int n = p.declared_degree();
    std::vector<Complex> q(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        q[static_cast<std::size_t>(k)] = std::conj(p.coeff(n - k));
    return Polynomial(std::move(q), n);
}

UnimodularFactor::UnimodularFactor(Complex value) : u(value)
{
    if (std::abs(std::abs(u) - 1.0) > 1e-10)
        throw std::invalid_argument("unimodular factor must have |u| = 1");
}

std::optional<UnimodularFactor> is_self_inversive(const Polynomial& p, double tol)
{
    const int n = p.declared_degree();
    const double scale = p.coeff_inf_norm();
    if (scale == 0.0)
        return std::nullopt;

    // Solve u from the best-conditioned coefficient pair, then verify all.
    int best = 0;
    double best_mod = -1.0;
    for (int k = 0; k <= n; ++k) {
        const double m = std::abs(p.coeff(n - k));
        if (m > best_mod) {
            best_mod = m;
            best = k;
        }
    }
    Complex u = p.coeff(best) / std::conj(p.coeff(n - best));
    const double mod = std::abs(u);
    if (mod == 0.0 || !std::isfinite(mod))
        return std::nullopt;
    u /= mod; // a true factor is unimodular; normalizing keeps the invariant exact

    for (int k = 0; k <= n; ++k)
        if (std::abs(p.coeff(k) - u * std::conj(p.coeff(n - k))) > tol * scale)
            return std::nullopt;
    return UnimodularFactor(u);
}

Polynomial from_roots(const std::vector<Complex>& roots, Complex leading)
{
    if (leading == Complex{})
        throw std::invalid_argument("leading coefficient must be nonzero");
    std::vector<Complex> c{leading};
    c.reserve(roots.size() + 1);
    for (const Complex& r : roots) {
        c.push_back({});
        for (std::size_t k = c.size() - 1; k > 0; --k)
            c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return Polynomial(std::move(c), static_cast<int>(roots.size()));
}

Polynomial add(const Polynomial& a, const Polynomial& b)
{
    const int n = std::max(a.declared_degree(), b.declared_degree());
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        c[static_cast<std::size_t>(k)] = a.coeff(k) + b.coeff(k);
    return Polynomial(std::move(c), n);
}

Polynomial scale(const Polynomial& a, Complex c)
{
    std::vector<Complex> s(a.coeffs());
    for (Complex& x : s)
        x *= c;
    return Polynomial(std::move(s), a.declared_degree());
}

std::string to_json(const Polynomial& p)
{
    nlohmann::json j;
    j["declared_degree"] = p.declared_degree();
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Complex& c : p.coeffs())
        coeffs.push_back({c.real(), c.imag()});
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t byte,
                             const std::string& what)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "polynomial JSON error at line " << line << ", column " << col << ": "
       << what;
    throw std::invalid_argument(os.str());
}

} // namespace

Polynomial polynomial_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(text, e.byte ? e.byte - 1 : 0, e.what());
    } catch (const nlohmann::json::exception& e) {
        parse_fail(text, 0, e.what());
    }
    if (!j.is_object() || !j.contains("declared_degree") || !j.contains("coeffs"))
        parse_fail(text, 0, "expected object with declared_degree and coeffs");
    if (!j["declared_degree"].is_number_integer())
        parse_fail(text, 0, "declared_degree must be an integer");
    const int n = j["declared_degree"].get<int>();
    if (n < 0)
        parse_fail(text, 0, "declared_degree must be nonnegative");
    if (!j["coeffs"].is_array() || j["coeffs"].empty())
        parse_fail(text, 0, "coeffs must be a non-empty array");
    if (j["coeffs"].size() > static_cast<std::size_t>(n) + 1)
        parse_fail(text, 0, "more coefficients than declared_degree + 1");

    std::vector<Complex> coeffs;
    coeffs.reserve(j["coeffs"].size());
    for (const auto& entry : j["coeffs"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            parse_fail(text, 0, "each coefficient must be a [re, im] pair");
        const double re = entry[0].get<double>();
        const double im = entry[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            parse_fail(text, 0, "coefficients must be finite");
        coeffs.emplace_back(re, im);
    }
    return Polynomial(std::move(coeffs), n);
}

} // namespace polyineq
