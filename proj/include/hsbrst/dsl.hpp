#pragma once

#include "hsbrst/derivation.hpp"
#include "hsbrst/element.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hsbrst {

// ---------------------------------------------------------------------------
// Lexer

enum class TokKind { ident, number, star, plus, minus, lparen, rparen, lbracket, rbracket, comma, end };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string src) : src_(std::move(src)) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_ = {TokKind::end, "", i_};
            return;
        }
        char c = src_[i_];
        auto single = [&](TokKind k) {
            tok_ = {k, std::string(1, c), i_};
            ++i_;
        };
        switch (c) {
            case '*': return single(TokKind::star);
            case '+': return single(TokKind::plus);
            case '-': return single(TokKind::minus);
            case '(': return single(TokKind::lparen);
            case ')': return single(TokKind::rparen);
            case '[': return single(TokKind::lbracket);
            case ']': return single(TokKind::rbracket);
            case ',': return single(TokKind::comma);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            if (j < src_.size() && src_[j] == '/' && j + 1 < src_.size() &&
                std::isdigit(static_cast<unsigned char>(src_[j + 1]))) {
                ++j;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            }
            tok_ = {TokKind::number, src_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            tok_ = {TokKind::ident, src_.substr(i_, j - i_), i_};
            i_ = j;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

    std::string src_;
    std::size_t i_ = 0;
    Token tok_;
};

// ---------------------------------------------------------------------------
// AST

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { scalar, generator, product, sum, bracket, trace, apply };
    Kind kind;
    std::size_t pos = 0;

    Scalar scalar;                       // kind == scalar
    std::string name;                    // generator name or applied operator
    std::vector<ExprPtr> children;       // product factors / sum terms / bracket-pair / single child
    std::vector<int> signs;              // kind == sum: +1/-1 per child

    static ExprPtr make_scalar(Scalar s, std::size_t pos) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::scalar;
        n->scalar = std::move(s);
        n->pos = pos;
        return n;
    }
    static ExprPtr make_gen(std::string name, std::size_t pos) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::generator;
        n->name = std::move(name);
        n->pos = pos;
        return n;
    }
};

inline bool ast_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind || a->name != b->name || a->signs != b->signs) return false;
    if (a->kind == ExprNode::Kind::scalar && !(a->scalar == b->scalar)) return false;
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!ast_equal(a->children[i], b->children[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parser

/// Names an expression may resolve against. Derivation names are those known
/// to the evaluation context plus the formal Dpp and tr.
struct DslNames {
    AlphabetPtr alphabet;
    std::vector<std::string> operators = {"tr", "Dpp", "s", "sbar", "d1", "d2", "dFP"};

    bool is_scalar_name(const std::string& n) const {
        if (n == "i") return true;
        for (std::size_t p = 0; p < kParamCount; ++p)
            if (n == param_name(static_cast<Param>(p))) return true;
        return false;
    }
    bool is_operator(const std::string& n) const {
        for (const auto& o : operators)
            if (o == n) return true;
        return false;
    }
    std::vector<std::string> known() const {
        std::vector<std::string> out = operators;
        out.push_back("i");
        for (std::size_t p = 0; p < kParamCount; ++p) out.push_back(param_name(static_cast<Param>(p)));
        if (alphabet)
            for (const auto& n : alphabet->names()) out.push_back(n);
        return out;
    }
};

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

class Parser {
  public:
    Parser(std::string text, DslNames names) : lex_(std::move(text)), names_(std::move(names)) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        if (lex_.peek().kind != TokKind::end)
            throw ParseError("trailing input after expression", lex_.peek().pos);
        return e;
    }

  private:
    ExprPtr parse_sum() {
        std::vector<ExprPtr> terms;
        std::vector<int> signs;
        int sign = 1;
        if (lex_.peek().kind == TokKind::minus) {
            lex_.take();
            sign = -1;
        } else if (lex_.peek().kind == TokKind::plus) {
            lex_.take();
        }
        terms.push_back(parse_product());
        signs.push_back(sign);
        while (lex_.peek().kind == TokKind::plus || lex_.peek().kind == TokKind::minus) {
            Token op = lex_.take();
            terms.push_back(parse_product());
            signs.push_back(op.kind == TokKind::plus ? 1 : -1);
        }
        if (terms.size() == 1 && signs[0] == 1) return terms[0];
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::sum;
        n->children = std::move(terms);
        n->signs = std::move(signs);
        n->pos = n->children.front()->pos;
        return n;
    }

    ExprPtr parse_product() {
        std::vector<ExprPtr> factors;
        factors.push_back(parse_factor());
        while (lex_.peek().kind == TokKind::star) {
            lex_.take();
            factors.push_back(parse_factor());
        }
        if (factors.size() == 1) return factors[0];
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::product;
        n->children = std::move(factors);
        n->pos = n->children.front()->pos;
        return n;
    }

    ExprPtr parse_factor() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case TokKind::number: {
                Token num = lex_.take();
                auto slash = num.text.find('/');
                Rational r;
                if (slash == std::string::npos)
                    r = Rational(num.text);
                else
                    r = Rational(num.text.substr(0, slash)) / Rational(num.text.substr(slash + 1));
                return ExprNode::make_scalar(Scalar(GaussianRational(r)), num.pos);
            }
            case TokKind::lparen: {
                lex_.take();
                ExprPtr inner = parse_sum();
                expect(TokKind::rparen, "')'");
                return inner;
            }
            case TokKind::lbracket: {
                Token open = lex_.take();
                ExprPtr a = parse_sum();
                expect(TokKind::comma, "',' in bracket");
                ExprPtr b = parse_sum();
                expect(TokKind::rbracket, "']'");
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprNode::Kind::bracket;
                n->children = {a, b};
                n->pos = open.pos;
                return n;
            }
            case TokKind::ident: {
                Token id = lex_.take();
                if (names_.is_operator(id.text)) {
                    expect(TokKind::lparen, "'(' after operator " + id.text);
                    ExprPtr arg = parse_sum();
                    expect(TokKind::rparen, "')'");
                    auto n = std::make_shared<ExprNode>();
                    n->kind = id.text == "tr" ? ExprNode::Kind::trace : ExprNode::Kind::apply;
                    n->name = id.text == "tr" ? "" : id.text;
                    n->children = {arg};
                    n->pos = id.pos;
                    return n;
                }
                if (id.text == "i") return ExprNode::make_scalar(Scalar::i(), id.pos);
                if (names_.is_scalar_name(id.text)) {
                    for (std::size_t p = 0; p < kParamCount; ++p)
                        if (id.text == param_name(static_cast<Param>(p)))
                            return ExprNode::make_scalar(Scalar::param(static_cast<Param>(p)), id.pos);
                }
                if (names_.alphabet && names_.alphabet->has(id.text))
                    return ExprNode::make_gen(id.text, id.pos);
                throw ParseError("unknown identifier '" + id.text + "'" + suggest(id.text), id.pos);
            }
            default:
                throw ParseError("expected a factor", t.pos);
        }
    }

    void expect(TokKind k, const std::string& what) {
        if (lex_.peek().kind != k) throw ParseError("expected " + what, lex_.peek().pos);
        lex_.take();
    }

    std::string suggest(const std::string& name) const {
        std::vector<std::string> near;
        for (const auto& cand : names_.known())
            if (edit_distance(name, cand) <= 2) near.push_back(cand);
        if (near.empty()) return "";
        std::string out = "; near matches:";
        for (const auto& n : near) out += " " + n;
        return out;
    }

    Lexer lex_;
    DslNames names_;
};

inline ExprPtr parse_expression(const std::string& text, const DslNames& names) {
    Parser p(text, names);
    return p.parse();
}

// ---------------------------------------------------------------------------
// Printer (canonical; print-parse round trips to an equal AST)

inline std::string print_expression(const ExprPtr& e) {
    auto parens_if = [](bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; };
    switch (e->kind) {
        case ExprNode::Kind::scalar: {
            std::string s = e->scalar.str();
            bool wrap = e->scalar.needs_parens();
            return wrap ? "(" + s + ")" : s;
        }
        case ExprNode::Kind::generator:
            return e->name;
        case ExprNode::Kind::product: {
            std::string out;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i) out += "*";
                const auto& c = e->children[i];
                out += parens_if(c->kind == ExprNode::Kind::sum, print_expression(c));
            }
            return out;
        }
        case ExprNode::Kind::sum: {
            std::string out;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                if (i || e->signs[i] < 0) out += e->signs[i] < 0 ? " - " : " + ";
                const auto& c = e->children[i];
                out += parens_if(c->kind == ExprNode::Kind::sum, print_expression(c));
            }
            // a leading " - " must not leave a dangling space
            if (!out.empty() && out[0] == ' ') out = out.substr(1);
            return out;
        }
        case ExprNode::Kind::bracket:
            return "[" + print_expression(e->children[0]) + ", " + print_expression(e->children[1]) + "]";
        case ExprNode::Kind::trace:
            return "tr(" + print_expression(e->children[0]) + ")";
        case ExprNode::Kind::apply:
            return e->name + "(" + print_expression(e->children[0]) + ")";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Evaluator

/// Evaluation context: an alphabet plus named derivations.
struct EvalContext {
    AlphabetPtr alphabet;
    std::map<std::string, DerivationPtr> derivations;

    Element eval(const ExprPtr& e) const {
        switch (e->kind) {
            case ExprNode::Kind::scalar:
                return Element::unit(alphabet, e->scalar);
            case ExprNode::Kind::generator:
                return Element::gen(alphabet, e->name);
            case ExprNode::Kind::product: {
                Element r = eval(e->children[0]);
                for (std::size_t i = 1; i < e->children.size(); ++i) r = r * eval(e->children[i]);
                return r;
            }
            case ExprNode::Kind::sum: {
                Element r(alphabet);
                for (std::size_t i = 0; i < e->children.size(); ++i) {
                    Element t = eval(e->children[i]);
                    if (e->signs[i] < 0)
                        r -= t;
                    else
                        r += t;
                }
                return r;
            }
            case ExprNode::Kind::bracket:
                return graded_commutator(eval(e->children[0]), eval(e->children[1]));
            case ExprNode::Kind::trace:
                return eval(e->children[0]).traced();
            case ExprNode::Kind::apply: {
                Element arg = eval(e->children[0]);
                if (e->name == "Dpp") return formal_dpp(arg);
                auto it = derivations.find(e->name);
                if (it == derivations.end())
                    throw ConfigError("no derivation named '" + e->name + "' in this context");
                return it->second->apply(arg);
            }
        }
        throw ConfigError("unreachable expression kind");
    }
};

} // namespace hsbrst
