#include "maslov/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <json.hpp>

#include "json_io.hpp"

#include "maslov/error.hpp"

namespace maslov {

namespace {

void check_exponent(const Exponent& e, std::size_t dim) {
    if (e.size() != dim) {
        throw ShapeError("exponent of length " + std::to_string(e.size()) + " in a " + std::to_string(dim) +
                         "-variable polynomial");
    }
    for (int k : e)
        if (k < 0) throw ParameterError("negative exponent");
}

}  // namespace

SparsePolynomial::SparsePolynomial(std::size_t dim, std::vector<Term> terms) : dim_(dim), terms_(std::move(terms)) {
    if (dim_ == 0) throw ShapeError("polynomial needs at least one variable");
    for (const Term& t : terms_) {
        check_exponent(t.exp, dim_);
        if (t.coef == Complex(0.0, 0.0)) throw ParameterError("zero coefficient stored");
        if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag())) throw ParameterError("non-finite coefficient");
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    for (std::size_t i = 1; i < terms_.size(); ++i)
        if (terms_[i].exp == terms_[i - 1].exp) throw ParameterError("repeated exponent in polynomial");
}

SparsePolynomial SparsePolynomial::collect(std::size_t dim, std::vector<Term> terms) {
    std::map<Exponent, Complex> acc;
    for (Term& t : terms) {
        check_exponent(t.exp, dim);
        acc[t.exp] += t.coef;
    }
    std::vector<Term> out;
    for (auto& [e, c] : acc)
        if (c != Complex(0.0, 0.0)) out.push_back({e, c});
    return SparsePolynomial(dim, std::move(out));
}

Complex SparsePolynomial::evaluate(std::span<const Complex> z) const {
    if (z.size() != dim_) throw ShapeError("evaluation point has wrong dimension");
    Complex sum = 0.0;
    for (const Term& t : terms_) {
        Complex m = t.coef;
        for (std::size_t i = 0; i < dim_; ++i)
            if (t.exp[i]) m *= std::pow(z[i], t.exp[i]);
        sum += m;
    }
    return sum;
}

SparsePolynomial operator*(const SparsePolynomial& f, const SparsePolynomial& g) {
    if (f.dim() != g.dim()) throw ShapeError("polynomial product: dimensions differ");
    std::vector<Term> prod;
    prod.reserve(f.terms().size() * g.terms().size());
    for (const Term& a : f.terms())
        for (const Term& b : g.terms()) {
            Exponent e(f.dim());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exp[i] + b.exp[i];
            prod.push_back({std::move(e), a.coef * b.coef});
        }
    return SparsePolynomial::collect(f.dim(), std::move(prod));
}

SparsePolynomial operator+(const SparsePolynomial& f, const SparsePolynomial& g) {
    if (f.dim() != g.dim()) throw ShapeError("polynomial sum: dimensions differ");
    std::vector<Term> all = f.terms();
    all.insert(all.end(), g.terms().begin(), g.terms().end());
    return SparsePolynomial::collect(f.dim(), std::move(all));
}

SparsePolynomial read_polynomial_json(std::istream& in) {
    const nlohmann::json j = detail::parse_json(in, "polynomial JSON");
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        std::vector<Term> terms;
        for (const auto& t : j.at("terms")) {
            Term term;
            term.exp = t.at("exp").get<Exponent>();
            term.coef = Complex(t.at("re").get<double>(), t.value("im", 0.0));
            terms.push_back(std::move(term));
        }
        return SparsePolynomial(dim, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("polynomial JSON: ") + e.what(), 0);
    } catch (const Error& e) {
        throw ParseError(std::string("polynomial JSON: ") + e.what(), 0);
    }
}

void write_polynomial_json(std::ostream& out, const SparsePolynomial& f) {
    nlohmann::json j;
    j["dim"] = f.dim();
    j["terms"] = nlohmann::json::array();
    for (const Term& t : f.terms()) j["terms"].push_back({{"exp", t.exp}, {"re", t.coef.real()}, {"im", t.coef.imag()}});
    out << j.dump() << '\n';
}

}  // namespace maslov
