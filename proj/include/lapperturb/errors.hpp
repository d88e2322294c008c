#ifndef LAPPERTURB_ERRORS_HPP
#define LAPPERTURB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lapperturb {

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when an expansion is requested around a degree shared by two or more nodes.
class NonUniqueDegree : public std::domain_error {
public:
    explicit NonUniqueDegree(std::size_t node)
        : std::domain_error("degree of node " + std::to_string(node + 1) + " is not unique"),
          node_(node) {}
    std::size_t node() const { return node_; }

private:
    std::size_t node_;
};

class SingularTransform : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotAlmostRegular : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lapperturb

#endif
