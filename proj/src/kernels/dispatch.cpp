#include <cstdlib>
#include <cstring>

#include "stormfield/kernels/kernels.hpp"

namespace stormfield::kernels {

namespace {

const Table& select() {
    const char* pref = std::getenv("STORMFIELD_SIMD");
    if (pref != nullptr) {
        if (std::strcmp(pref, "scalar") == 0) return scalar_table();
        if (std::strcmp(pref, "avx2") == 0) {
            if (const Table* t = avx2_table()) return *t;
            return scalar_table();
        }
        if (std::strcmp(pref, "neon") == 0) {
            if (const Table* t = neon_table()) return *t;
            return scalar_table();
        }
        // anything else, including "auto", falls through
    }
    if (const Table* t = avx2_table()) return *t;
    if (const Table* t = neon_table()) return *t;
    return scalar_table();
}

}  // namespace

const Table& active_table() {
    static const Table& chosen = select();
    return chosen;
}

}  // namespace stormfield::kernels
