#include "heb/polysys.hpp"

#include "heb/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace heb {

ExponentVector::ExponentVector(std::initializer_list<int> entries) : e_(entries) {}

ExponentVector::ExponentVector(std::vector<int> entries) : e_(std::move(entries)) {}

int ExponentVector::total_degree() const noexcept { return std::accumulate(e_.begin(), e_.end(), 0); }

bool ExponentVector::is_origin() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

int ExponentVector::pure_power_of(std::size_t j) const noexcept {
    for (std::size_t k = 0; k < e_.size(); ++k)
        if (k != j && e_[k] != 0) return 0;
    return e_[j];
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw DimensionError("exponent vectors of different lengths");
    ExponentVector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out.e_[j] = a.e_[j] + b.e_[j];
    return out;
}

std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
}

std::string to_string(const ExponentVector& e) {
    std::string out = "(";
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(e[j]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial f(nvars);
    f.add_term(ExponentVector(nvars), c);
    return f;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t j) {
    Polynomial f(nvars);
    ExponentVector e(nvars);
    e[j] = 1;
    f.add_term(e, 1);
    return f;
}

void Polynomial::add_term(const ExponentVector& e, const Rational& c) {
    check_dimension(e.size());
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int Polynomial::degree() const noexcept {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
    return d;
}

std::vector<ExponentVector> Polynomial::support() const {
    std::vector<ExponentVector> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.push_back(e);
    return out;
}

Rational Polynomial::coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::derivative(std::size_t j) const {
    if (j >= nvars_) throw DimensionError("derivative index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[j] == 0) continue;
        ExponentVector de = e;
        de[j] -= 1;
        out.add_term(de, c * e[j]);
    }
    return out;
}

Polynomial Polynomial::euler_component(std::size_t j) const {
    if (j >= nvars_) throw DimensionError("derivative index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
        if (e[j] != 0) out.add_term(e, c * e[j]);
    return out;
}

void Polynomial::check_dimension(std::size_t len) const {
    if (len != nvars_)
        throw DimensionError("expected " + std::to_string(nvars_) + " coordinates, got " + std::to_string(len));
}

double Polynomial::evaluate(std::span<const double> x) const {
    check_dimension(x.size());
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c.get_d();
        for (std::size_t j = 0; j < nvars_; ++j)
            for (int k = 0; k < e[j]; ++k) term *= x[j];
        sum += term;
    }
    return sum;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
    check_dimension(x.size());
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t j = 0; j < nvars_; ++j)
            for (int k = 0; k < e[j]; ++k) term *= x[j];
        sum += term;
    }
    return sum;
}

std::vector<double> Polynomial::gradient(std::span<const double> x) const {
    check_dimension(x.size());
    std::vector<double> g(nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) g[j] = derivative(j).evaluate(x);
    return g;
}

Polynomial Polynomial::principal_part(const std::set<ExponentVector>& face_support) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
        if (face_support.contains(e)) out.terms_.emplace(e, c);
    return out;
}

std::string Polynomial::to_string(const std::vector<std::string>& varnames) const {
    if (varnames.size() != nvars_) throw DimensionError("variable roster does not match polynomial");
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t j = 0; j < nvars_; ++j) {
            if (e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += varnames[j];
            if (e[j] > 1) mono += "^" + std::to_string(e[j]);
        }
        if (mono.empty())
            out += heb::to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += heb::to_string(mag) + "*" + mono;
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    check_dimension(other.nvars_);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    check_dimension(other.nvars_);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coef] : terms_) coef *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dimension(b.nvars_);
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
}

double evaluate(const Polynomial& f, std::span<const double> x) { return f.evaluate(x); }
Rational evaluate(const Polynomial& f, std::span<const Rational> x) { return f.evaluate(x); }
std::vector<double> gradient(const Polynomial& f, std::span<const double> x) { return f.gradient(x); }
Polynomial principal_part(const Polynomial& f, const std::set<ExponentVector>& face_support) {
    return f.principal_part(face_support);
}

// ---------------------------------------------------------------------------

CompiledPolynomial::CompiledPolynomial(const Polynomial& f) : nvars_(f.nvars()) {
    for (const auto& [e, c] : f.terms()) {
        coef_.push_back(c.get_d());
        for (std::size_t j = 0; j < nvars_; ++j) {
            exps_.push_back(e[j]);
            max_exp_ = std::max(max_exp_, e[j]);
        }
    }
}

namespace {

// powers[j * (max+1) + k] = x_j^k
void fill_powers(std::span<const double> x, int max_exp, std::vector<double>& powers) {
    const std::size_t stride = static_cast<std::size_t>(max_exp) + 1;
    powers.assign(x.size() * stride, 1.0);
    for (std::size_t j = 0; j < x.size(); ++j)
        for (int k = 1; k <= max_exp; ++k) powers[j * stride + k] = powers[j * stride + k - 1] * x[j];
}

}  // namespace

double CompiledPolynomial::value(std::span<const double> x) const {
    if (x.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
    thread_local std::vector<double> powers;
    fill_powers(x, max_exp_, powers);
    const std::size_t stride = static_cast<std::size_t>(max_exp_) + 1;
    double sum = 0.0;
    for (std::size_t t = 0; t < coef_.size(); ++t) {
        double term = coef_[t];
        const int* e = &exps_[t * nvars_];
        for (std::size_t j = 0; j < nvars_; ++j) term *= powers[j * stride + e[j]];
        sum += term;
    }
    return sum;
}

double CompiledPolynomial::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
    if (x.size() != nvars_ || grad.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
    thread_local std::vector<double> powers;
    fill_powers(x, max_exp_, powers);
    const std::size_t stride = static_cast<std::size_t>(max_exp_) + 1;
    std::fill(grad.begin(), grad.end(), 0.0);
    double sum = 0.0;
    for (std::size_t t = 0; t < coef_.size(); ++t) {
        const int* e = &exps_[t * nvars_];
        double term = coef_[t];
        for (std::size_t j = 0; j < nvars_; ++j) term *= powers[j * stride + e[j]];
        sum += term;
        for (std::size_t j = 0; j < nvars_; ++j) {
            if (e[j] == 0) continue;
            double d = coef_[t] * e[j];
            for (std::size_t k = 0; k < nvars_; ++k) d *= powers[k * stride + (k == j ? e[k] - 1 : e[k])];
            grad[j] += d;
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------

PolySystem::PolySystem(std::vector<std::string> names, std::vector<std::string> varnames,
                       std::vector<Polynomial> polys)
    : names_(std::move(names)), varnames_(std::move(varnames)), polys_(std::move(polys)) {
    if (polys_.empty()) throw Error("a polynomial system needs at least one component");
    if (names_.size() != polys_.size()) throw Error("component names do not match components");
    if (varnames_.empty()) throw Error("a polynomial system needs at least one variable");
    for (const auto& f : polys_) {
        if (f.nvars() != varnames_.size()) throw DimensionError("component arity differs from variable roster");
        d_ = std::max(d_, f.degree());
    }
}

void PolySystem::require_nonzero_components() const {
    for (std::size_t i = 0; i < polys_.size(); ++i)
        if (polys_[i].is_zero()) throw Error("component '" + names_[i] + "' is identically zero");
}

std::string PolySystem::to_string() const {
    std::string out = "vars ";
    for (std::size_t j = 0; j < varnames_.size(); ++j) out += (j ? ", " : "") + varnames_[j];
    out += "\n";
    for (std::size_t i = 0; i < polys_.size(); ++i) out += names_[i] + " = " + polys_[i].to_string(varnames_) + "\n";
    return out;
}

// ---------------------------------------------------------------------------

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, Caret, Equals, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t col = i + 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            bool dot = false;
            while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || (line[j] == '.' && !dot))) {
                if (line[j] == '.') dot = true;
                ++j;
            }
            std::string text(line.substr(i, j - i));
            if (text == ".") throw ParseError("stray '.'", lineno, col);
            out.push_back({Tok::Number, text, col});
            i = j;
        } else {
            Tok k;
            switch (c) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '/': k = Tok::Slash; break;
                case '^': k = Tok::Caret; break;
                case '=': k = Tok::Equals; break;
                case ',': k = Tok::Comma; break;
                default: throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
            }
            out.push_back({k, std::string(1, c), col});
            ++i;
        }
    }
    out.push_back({Tok::End, "", line.size() + 1});
    return out;
}

struct VariableTable {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
    std::size_t max_variables;

    std::size_t lookup_or_add(const std::string& name, std::size_t line, std::size_t col) {
        if (auto it = index.find(name); it != index.end()) return it->second;
        if (names.size() >= max_variables)
            throw ParseError("variable count exceeds the limit of " + std::to_string(max_variables), line, col);
        index.emplace(name, names.size());
        names.push_back(name);
        return names.size() - 1;
    }
};

struct RawTerm {
    Rational coeff;
    std::vector<std::pair<std::size_t, int>> factors;  // (variable, power)
};

class LineParser {
public:
    LineParser(const std::vector<Token>& toks, std::size_t lineno,
               const std::unordered_map<std::string, std::size_t>& components, VariableTable& vars)
        : toks_(toks), line_(lineno), components_(components), vars_(vars) {}

    std::vector<RawTerm> parse_expr() {
        std::vector<RawTerm> terms;
        bool negative = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            negative = peek().kind == Tok::Minus;
            ++pos_;
        }
        terms.push_back(parse_term(negative));
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            negative = peek().kind == Tok::Minus;
            ++pos_;
            terms.push_back(parse_term(negative));
        }
        if (peek().kind != Tok::End) fail("expected '+', '-' or end of line");
        return terms;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }

    Rational parse_coeff() {
        std::string text = peek().text;
        ++pos_;
        if (peek().kind == Tok::Slash) {
            ++pos_;
            if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
                fail("expected a positive integer denominator");
            if (text.find('.') != std::string::npos) fail("a fraction needs an integer numerator");
            text += "/" + peek().text;
            ++pos_;
            if (Rational(Integer(toks_[pos_ - 1].text)) == 0) {
                --pos_;
                fail("zero denominator");
            }
        }
        return parse_rational(text);
    }

    void parse_factor(RawTerm& term) {
        const Token& t = peek();
        if (t.kind != Tok::Ident) fail("expected a variable");
        if (components_.contains(t.text))
            fail("component name '" + t.text + "' cannot be used as a variable");
        std::size_t var = vars_.lookup_or_add(t.text, line_, t.column);
        ++pos_;
        int power = 1;
        if (peek().kind == Tok::Caret) {
            ++pos_;
            if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
                fail("expected a positive integer exponent");
            Integer z(peek().text);
            if (z < 1 || z > 1000) fail("exponent must be an integer in [1, 1000]");
            power = static_cast<int>(z.get_si());
            ++pos_;
        }
        term.factors.emplace_back(var, power);
    }

    RawTerm parse_term(bool negative) {
        RawTerm term{Rational(1), {}};
        if (peek().kind == Tok::Number) {
            term.coeff = parse_coeff();
            if (peek().kind == Tok::Star) {
                ++pos_;
                parse_factor(term);
            } else if (peek().kind == Tok::Ident) {
                parse_factor(term);
            } else {
                if (negative) term.coeff = -term.coeff;
                return term;
            }
        } else {
            parse_factor(term);
        }
        while (true) {
            if (peek().kind == Tok::Star) {
                ++pos_;
                parse_factor(term);
            } else if (peek().kind == Tok::Ident) {
                parse_factor(term);
            } else {
                break;
            }
        }
        if (negative) term.coeff = -term.coeff;
        return term;
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
    const std::unordered_map<std::string, std::size_t>& components_;
    VariableTable& vars_;
};

struct SourceLine {
    std::size_t lineno;
    std::vector<Token> tokens;
};

}  // namespace

PolySystem parse_system(std::string_view text, const ParseOptions& options) {
    std::vector<SourceLine> lines;
    {
        std::size_t lineno = 0, start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            ++lineno;
            std::string_view raw = text.substr(start, end - start);
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            auto toks = tokenize(raw, lineno);
            if (toks.size() > 1) lines.push_back({lineno, std::move(toks)});
            start = end + 1;
        }
    }

    VariableTable vars{{}, {}, options.max_variables};
    std::unordered_map<std::string, std::size_t> components;
    std::vector<std::string> component_names;
    std::vector<const SourceLine*> definitions;
    bool seen_definition = false;

    for (const auto& line : lines) {
        const auto& t = line.tokens;
        if (t[0].kind == Tok::Ident && t[0].text == "vars" && t[1].kind != Tok::Equals) {
            if (seen_definition || !vars.names.empty())
                throw ParseError("'vars' must be the first declaration", line.lineno, t[0].column);
            std::size_t i = 1;
            while (t[i].kind != Tok::End) {
                if (t[i].kind != Tok::Ident) throw ParseError("expected a variable name", line.lineno, t[i].column);
                if (vars.index.contains(t[i].text))
                    throw ParseError("variable '" + t[i].text + "' declared twice", line.lineno, t[i].column);
                vars.lookup_or_add(t[i].text, line.lineno, t[i].column);
                ++i;
                if (t[i].kind == Tok::Comma) ++i;
            }
            continue;
        }
        if (t[0].kind != Tok::Ident) throw ParseError("expected a component name", line.lineno, t[0].column);
        if (t[1].kind != Tok::Equals) throw ParseError("expected '='", line.lineno, t[1].column);
        if (components.contains(t[0].text))
            throw ParseError("duplicate definition of '" + t[0].text + "'", line.lineno, t[0].column);
        if (vars.index.contains(t[0].text))
            throw ParseError("'" + t[0].text + "' is declared as a variable", line.lineno, t[0].column);
        components.emplace(t[0].text, component_names.size());
        component_names.push_back(t[0].text);
        definitions.push_back(&line);
        seen_definition = true;
    }
    if (definitions.empty()) throw ParseError("no component definitions", lines.empty() ? 1 : lines.back().lineno, 1);

    std::vector<std::vector<RawTerm>> raw;
    for (const SourceLine* line : definitions) {
        std::vector<Token> rhs(line->tokens.begin() + 2, line->tokens.end());
        if (rhs.size() == 1) throw ParseError("empty expression", line->lineno, rhs[0].column);
        LineParser parser(rhs, line->lineno, components, vars);
        raw.push_back(parser.parse_expr());
    }
    if (vars.names.empty()) {
        // Constant-only systems still need an ambient space.
        vars.names.push_back("x");
    }

    const std::size_t n = vars.names.size();
    std::vector<Polynomial> polys;
    for (const auto& terms : raw) {
        Polynomial f(n);
        for (const auto& term : terms) {
            ExponentVector e(n);
            for (auto [var, power] : term.factors) e[var] += power;
            f.add_term(e, term.coeff);
        }
        polys.push_back(std::move(f));
    }
    return PolySystem(std::move(component_names), std::move(vars.names), std::move(polys));
}

}  // namespace heb
