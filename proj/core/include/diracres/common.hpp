#ifndef DIRACRES_COMMON_HPP
#define DIRACRES_COMMON_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracres {

using cx = std::complex<double>;

constexpr double PI = 3.14159265358979323846;

// Error kinds map onto the CLI exit-code contract (1 io / 2 validation / 3 numerical).
enum class ErrorKind { io = 1, validation = 2, numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
private:
    ErrorKind kind_;
};

inline Error io_error(const std::string& m) { return Error(ErrorKind::io, m); }
inline Error validation_error(const std::string& m) { return Error(ErrorKind::validation, m); }
inline Error numerical_error(const std::string& m) { return Error(ErrorKind::numerical, m); }

// Check/diagnostic report shared by the verify-style operations.
struct CheckItem {
    std::string name;
    bool passed = false;
    double value = 0.0;      // the measured quantity
    std::string detail;
};

struct Report {
    bool passed = true;
    std::vector<CheckItem> items;
    void add(const std::string& name, bool ok, double value = 0.0, const std::string& detail = {}) {
        items.push_back({name, ok, value, detail});
        passed = passed && ok;
    }
    const CheckItem* find(const std::string& name) const {
        for (const auto& it : items)
            if (it.name == name) return &it;
        return nullptr;
    }
};

// Gregory (order-4) quadrature weights on n uniform nodes; trapezoid for short spans.
std::vector<double> gregory_weights(std::size_t n);

// Weighted quadrature of samples against the Gregory weights, scaled by step.
double quad_abs(const std::vector<cx>& f, double step);                 // L1
double quad_abs2(const std::vector<cx>& f, double step);                // ||.||_{L2}^2
cx quad_sum(const std::vector<cx>& f, double step);

bool finite(cx v);

// Deterministic parallel loop over [0, n); worker count capped by DIRAC_RES_THREADS.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);
unsigned worker_count();

} // namespace diracres

#endif
