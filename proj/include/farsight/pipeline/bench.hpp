#pragma once

#include <filesystem>
#include <string>

#include "farsight/core/types.hpp"

namespace farsight::pipeline {

struct BenchConfig {
    int frames_1080p = 8;
    int frames_4k = 4;
    std::uint64_t seed = 0;
    bool kernel_compare = true;  // serial vs OpenMP degrade comparison
};

// Per-module wall time over the synthetic corpus, measured serially; fps is
// frames divided by the serialized total.
struct BenchReport {
    int frames_1080p = 0;
    int frames_4k = 0;
    double detect_track_s = 0.0;
    double restoration_s = 0.0;  // turbulence degradation stand-in
    double face_s = 0.0;
    double gait_s = 0.0;
    double body_s = 0.0;
    double total_s = 0.0;
    double fps_1080p = 0.0;
    double fps_4k = 0.0;
    double fps_overall = 0.0;
    // Kernel comparison (same workload, serial vs parallel degrade).
    double degrade_serial_s = 0.0;
    double degrade_parallel_s = 0.0;

    std::string to_json() const;
    std::string to_table() const;
};

BenchReport bench(const BenchConfig& config);

void write_bench_report(const BenchReport& report,
                        const std::filesystem::path& path);

}  // namespace farsight::pipeline
