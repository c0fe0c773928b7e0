#pragma once

// Arithmetic expressions in one named parameter, used for lengths in family
// files. Grammar: numbers, the parameter name, + - * / ^, exp(), ln() and
// parentheses. The Unicode minus and middle dot are accepted as - and *.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cheegernet {

class ExprError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Expr {
  public:
    /// Parses `text`; `param` is the only identifier allowed besides exp/ln.
    static Expr parse(std::string_view text, std::string param = "n");

    double eval(double param_value) const;
    const std::string& source() const noexcept { return source_; }

    struct Node;

  private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace cheegernet
