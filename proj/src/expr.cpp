#include "cheegernet/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace cheegernet {

struct Expr::Node {
    enum class Kind { Number, Param, Neg, Add, Sub, Mul, Div, Pow, Exp, Ln } kind = Kind::Number;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    double eval(double x) const {
        switch (kind) {
            case Kind::Number: return value;
            case Kind::Param: return x;
            case Kind::Neg: return -lhs->eval(x);
            case Kind::Add: return lhs->eval(x) + rhs->eval(x);
            case Kind::Sub: return lhs->eval(x) - rhs->eval(x);
            case Kind::Mul: return lhs->eval(x) * rhs->eval(x);
            case Kind::Div: return lhs->eval(x) / rhs->eval(x);
            case Kind::Pow: return std::pow(lhs->eval(x), rhs->eval(x));
            case Kind::Exp: return std::exp(lhs->eval(x));
            case Kind::Ln: return std::log(lhs->eval(x));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

std::string normalise(std::string_view in) {
    std::string out;
    for (std::size_t i = 0; i < in.size(); ++i) {
        // U+2212 minus sign and U+00B7 middle dot
        if (in.substr(i, 3) == "\xE2\x88\x92") {
            out += '-';
            i += 2;
        } else if (in.substr(i, 2) == "\xC2\xB7") {
            out += '*';
            i += 1;
        } else {
            out += in[i];
        }
    }
    return out;
}

class Parser {
  public:
    Parser(std::string text, std::string param) : s_(std::move(text)), param_(std::move(param)) {}

    NodePtr parse() {
        auto e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ExprError(why + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        n->value = v;
        return n;
    }

    NodePtr sum() {
        auto e = product();
        for (;;) {
            if (eat('+')) e = make(Kind::Add, e, product());
            else if (eat('-')) e = make(Kind::Sub, e, product());
            else return e;
        }
    }
    NodePtr product() {
        auto e = unary();
        for (;;) {
            if (eat('*')) e = make(Kind::Mul, e, unary());
            else if (eat('/')) e = make(Kind::Div, e, unary());
            else return e;
        }
    }
    NodePtr unary() {
        if (eat('-')) return make(Kind::Neg, unary());
        if (eat('+')) return unary();
        auto base = primary();
        if (eat('^')) return make(Kind::Pow, base, unary());
        return base;
    }
    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            return make(Kind::Number, nullptr, nullptr, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
            const std::string id = s_.substr(start, pos_ - start);
            if (id == "exp" || id == "ln") {
                if (!eat('(')) fail("expected '(' after " + id);
                auto arg = sum();
                if (!eat(')')) fail("expected ')'");
                return make(id == "exp" ? Kind::Exp : Kind::Ln, arg);
            }
            if (id == param_) return make(Kind::Param);
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected character");
    }

    std::string s_;
    std::string param_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(std::string_view text, std::string param) {
    Expr e;
    e.source_ = std::string(text);
    e.root_ = Parser(normalise(text), std::move(param)).parse();
    return e;
}

double Expr::eval(double param_value) const { return root_->eval(param_value); }

}  // namespace cheegernet
