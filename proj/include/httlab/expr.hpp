#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace httlab {

// Small arithmetic expression over the variables u, v and named parameters.
// Grammar: + - * / ^ (right assoc), parentheses, numeric literals, identifiers.
class Expr {
public:
    static Expr parse(const std::string& source);

    double eval(double u, double v, const std::map<std::string, double>& params) const;

    // Identifiers other than u/v that appear in the expression.
    const std::vector<std::string>& param_names() const { return params_; }
    const std::string& source() const { return source_; }

    struct Node;  // exposed for the parser implementation

private:
    std::shared_ptr<const Node> root_;
    std::vector<std::string> params_;
    std::string source_;
};

}  // namespace httlab
