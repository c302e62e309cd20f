#include "semifact/budget.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "semifact/errors.hpp"

namespace semifact {

namespace {

std::size_t from_env() {
    const char* v = std::getenv("SEMIFACT_MAX_MEM");
    if (!v || !*v) return 0;
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (end && *end) {
        switch (*end) {
            case 'k': case 'K': n <<= 10; break;
            case 'm': case 'M': n <<= 20; break;
            case 'g': case 'G': n <<= 30; break;
            default: break;
        }
    }
    return static_cast<std::size_t>(n);
}

std::atomic<std::size_t>& cap() {
    static std::atomic<std::size_t> c{from_env()};
    return c;
}

std::atomic<std::size_t> used{0};

}  // namespace

void set_memory_cap(std::size_t bytes) { cap() = bytes; }
std::size_t memory_cap() { return cap(); }

void charge(std::size_t bytes) {
    std::size_t c = cap();
    std::size_t now = used += bytes;
    if (c != 0 && now > c)
        throw ResourceExhausted("enumeration exceeded SEMIFACT_MAX_MEM (" + std::to_string(c) + " bytes)");
}

void reset_charges() { used = 0; }

}  // namespace semifact
