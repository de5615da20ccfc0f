#include "lgnss/los_kernels.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace lgnss::kernels {

namespace {

struct Selection {
    AccumulateFn fn = accumulate_los_scalar;
    std::string name = "scalar";
};

bool avx2_available() {
#if defined(LGNSS_HAVE_AVX2_TU)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool neon_available() {
#if defined(LGNSS_HAVE_NEON_TU)
    return true;  // baseline on aarch64
#else
    return false;
#endif
}

Selection resolve(const std::string& name) {
    if (name == "scalar") return {accumulate_los_scalar, "scalar"};
#if defined(LGNSS_HAVE_AVX2_TU)
    if (name == "avx2") {
        if (!avx2_available()) throw std::invalid_argument("avx2 kernel not supported here");
        return {accumulate_los_avx2, "avx2"};
    }
#endif
#if defined(LGNSS_HAVE_NEON_TU)
    if (name == "neon") {
        if (!neon_available()) throw std::invalid_argument("neon kernel not supported here");
        return {accumulate_los_neon, "neon"};
    }
#endif
    if (name == "auto") {
#if defined(LGNSS_HAVE_AVX2_TU)
        if (avx2_available()) return {accumulate_los_avx2, "avx2"};
#endif
#if defined(LGNSS_HAVE_NEON_TU)
        if (neon_available()) return {accumulate_los_neon, "neon"};
#endif
        return {accumulate_los_scalar, "scalar"};
    }
    throw std::invalid_argument("unknown kernel name: " + name);
}

Selection& current() {
    static Selection sel = [] {
        const char* env = std::getenv("LGNSS_KERNEL");
        return resolve(env && *env ? env : "auto");
    }();
    return sel;
}

std::mutex g_mutex;

}  // namespace

AccumulateFn select_kernel() {
    std::lock_guard<std::mutex> lock(g_mutex);
    return current().fn;
}

std::string selected_kernel_name() {
    std::lock_guard<std::mutex> lock(g_mutex);
    return current().name;
}

void force_kernel(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_mutex);
    current() = resolve(name);
}

}  // namespace lgnss::kernels
