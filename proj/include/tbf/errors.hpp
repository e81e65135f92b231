#pragma once

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tbf {

// Base for all typed failures raised by the toolkit. Callers that only need
// the exit-code distinction catch ValidationError vs ParseError.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct NotAGroup : ValidationError {
    std::string reason;   // identity | inverses | associativity | latin-square
    int wx = -1, wy = -1, wz = -1;
    NotAGroup(std::string r, int x, int y, int z)
        : ValidationError("not a group (" + r + "), witness (" + std::to_string(x) + "," +
                          std::to_string(y) + "," + std::to_string(z) + ")"),
          reason(std::move(r)), wx(x), wy(y), wz(z) {}
};

struct NotAHomomorphism : ValidationError {
    int x, y;
    NotAHomomorphism(int x_, int y_)
        : ValidationError("not a homomorphism: map(x*y) != map(x)*map(y) at x=" +
                          std::to_string(x_) + ", y=" + std::to_string(y_)),
          x(x_), y(y_) {}
};

struct GroupMismatch : ValidationError {
    GroupMismatch() : ValidationError("endomorphisms belong to different groups") {}
};

struct CapExceeded : ValidationError {
    CapExceeded(const std::string& what, std::size_t cap)
        : ValidationError(what + " exceeds cap " + std::to_string(cap)) {}
};

struct NotGenerating : ValidationError {
    NotGenerating() : ValidationError("given set does not generate the group") {}
};

struct NotNormal : ValidationError {
    NotNormal() : ValidationError("subgroup is not normal") {}
};

struct NotInvariant : ValidationError {
    NotInvariant(const std::string& what) : ValidationError("not invariant: " + what) {}
};

struct NonIntegerAverage : ValidationError {
    NonIntegerAverage() : ValidationError("Burnside average is not an integer (implementation bug)") {}
};

struct InfiniteCokernel : ValidationError {
    InfiniteCokernel() : ValidationError("cokernel is infinite (determinant vanishes)") {}
};

struct InfiniteTerm : ValidationError {
    int n;
    explicit InfiniteTerm(int n_)
        : ValidationError("Reidemeister sequence has an infinite term at n=" + std::to_string(n_)),
          n(n_) {}
};

struct EquivarianceFailure : ValidationError {
    int f;
    explicit EquivarianceFailure(int f_)
        : ValidationError("lattice action equivariance fails at finite-part element " + std::to_string(f_)),
          f(f_) {}
};

struct CocycleFailure : ValidationError {
    int f1, f2;
    CocycleFailure(int a, int b)
        : ValidationError("cocycle condition fails at pair (" + std::to_string(a) + "," +
                          std::to_string(b) + ")"),
          f1(a), f2(b) {}
};

struct StabilizationFailure : ValidationError {
    int k;
    explicit StabilizationFailure(int k_)
        : ValidationError("class count changed under lattice refinement k=" + std::to_string(k_)),
          k(k_) {}
};

struct LiftFailure : ValidationError {
    LiftFailure(const std::string& msg) : ValidationError("character lift failed: " + msg) {}
};

struct NotARepresentation : ValidationError {
    NotARepresentation(const std::string& msg) : ValidationError("not a representation: " + msg) {}
};

struct PreconditionNotFPoint : ValidationError {
    PreconditionNotFPoint() : ValidationError("character is not an f-point of the given power") {}
};

struct NegativePeriodCount : ValidationError {
    int d;
    explicit NegativePeriodCount(int d_)
        : ValidationError("negative periodic-point count at period " + std::to_string(d_)), d(d_) {}
};

struct NonDivisible : ValidationError {
    int d;
    explicit NonDivisible(int d_)
        : ValidationError("periodic-point count not divisible by its period " + std::to_string(d_)),
          d(d_) {}
};

// Runtime caps. Overridable via the TBF_CAPS environment variable, e.g.
//   TBF_CAPS="closure=50000,chartable=4000,quotient=10000,exhaustive=1"
struct Caps {
    std::size_t closure = 20000;       // permutation closure enumeration
    std::size_t chartable = 2000;      // character table group order
    std::size_t quotient = 5000;       // materialized extension quotient order
    std::size_t assoc_exhaustive = 256;// exhaustive associativity check up to this order
    bool force_exhaustive = false;

    static Caps& instance() {
        static Caps caps = from_env();
        return caps;
    }

  private:
    static Caps from_env() {
        Caps c;
        const char* env = std::getenv("TBF_CAPS");
        if (!env) return c;
        std::stringstream ss(env);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) continue;
            std::string key = item.substr(0, eq);
            unsigned long val = std::strtoul(item.c_str() + eq + 1, nullptr, 10);
            if (key == "closure") c.closure = val;
            else if (key == "chartable") c.chartable = val;
            else if (key == "quotient") c.quotient = val;
            else if (key == "exhaustive") c.force_exhaustive = val != 0;
        }
        return c;
    }
};

}  // namespace tbf
