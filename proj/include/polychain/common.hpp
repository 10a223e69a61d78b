#pragma once

#include <Eigen/Dense>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace polychain {

using Vec  = Eigen::VectorXd;
using Mat  = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// One tolerance knob for all geometric predicates, applied to normalized data.
inline constexpr double kDefaultEps = 1e-9;

// Screw space is (rho_x, rho_y, rho_z, eps_x, eps_y, eps_z) at a reduction point.
inline constexpr int kScrewDim = 6;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(int got, int want)
        : Error("dimension mismatch: " + std::to_string(got) + " vs " + std::to_string(want)) {}
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class EmptyPolytope : public Error {
public:
    EmptyPolytope() : Error("operation on empty polytope") {}
    explicit EmptyPolytope(const std::string& what) : Error(what) {}
};

// Infeasible halfspace system: the feasible set is empty.
class EmptySystem : public Error {
public:
    EmptySystem() : Error("halfspace system is infeasible") {}
};

class Unbounded : public Error {
public:
    explicit Unbounded(Vec dir) : Error(describe(dir)), direction(std::move(dir)) {}
    Vec direction;

private:
    static std::string describe(const Vec& d) {
        std::ostringstream os;
        os << "feasible set is unbounded along direction (";
        for (int i = 0; i < d.size(); ++i) os << (i ? ", " : "") << d(i);
        os << ")";
        return os.str();
    }
};

class Infeasible : public Error {
public:
    explicit Infeasible(const std::string& what) : Error(what) {}
};

class EmptySamples : public Error {
public:
    EmptySamples() : Error("no surface samples supplied") {}
};

class DegenerateNormal : public Error {
public:
    explicit DegenerateNormal(const std::string& what) : Error(what) {}
};

class MatingViolated : public Error {
public:
    explicit MatingViolated(const std::string& what) : Error(what) {}
};

class BadGrid : public Error {
public:
    explicit BadGrid(const std::string& what) : Error(what) {}
};

class ReductionPointMismatch : public Error {
public:
    explicit ReductionPointMismatch(const std::string& what) : Error(what) {}
};

class NoPath : public Error {
public:
    explicit NoPath(const std::string& what) : Error(what) {}
};

class SharedEdgeTopology : public Error {
public:
    explicit SharedEdgeTopology(const std::string& what) : Error(what) {}
};

class UnresolvedLeaf : public Error {
public:
    explicit UnresolvedLeaf(const std::string& what) : Error(what) {}
};

class DimTooHighForOFF : public Error {
public:
    explicit DimTooHighForOFF(int dim)
        : Error("polytope of dimension " + std::to_string(dim) + " cannot be written as an OFF mesh") {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace polychain
