#include "hcurv/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace hcurv {

int thread_count() {
    if (const char* env = std::getenv("HCURV_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_rows(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        }));
    }
    for (auto& t : tasks) t.get();
}

double pairwise_sum(const std::vector<double>& v) {
    struct Rec {
        static double sum(const double* p, size_t n) {
            if (n <= 8) {
                double s = 0.0;
                for (size_t i = 0; i < n; ++i) s += p[i];
                return s;
            }
            const size_t h = n / 2;
            return sum(p, h) + sum(p + h, n - h);
        }
    };
    return Rec::sum(v.data(), v.size());
}

} // namespace hcurv
