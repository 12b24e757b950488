#include "qwalk/common.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qwalk {
namespace {

constexpr std::size_t kDefaultMaxDimension = 4096;

std::size_t initial_max_dimension() {
    const char* env = std::getenv("WALKER_MAX_DIM");
    if (env == nullptr || *env == '\0') return kDefaultMaxDimension;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(env, &pos);
        if (pos != std::string(env).size() || v < 2) return kDefaultMaxDimension;
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        return kDefaultMaxDimension;
    }
}

std::atomic<std::size_t>& cap() {
    static std::atomic<std::size_t> value{initial_max_dimension()};
    return value;
}

}  // namespace

std::size_t max_dimension() { return cap().load(std::memory_order_relaxed); }

void set_max_dimension(std::size_t n) {
    if (n < 2) throw DomainError("max dimension must be at least 2");
    cap().store(n, std::memory_order_relaxed);
}

}  // namespace qwalk
