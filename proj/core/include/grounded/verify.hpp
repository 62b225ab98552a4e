#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grounded/graph.hpp"

namespace grounded {

/// Campaign names: ladder, layers, pillars, clip, attach, final, dist2,
/// corollaries.
struct VerifyOptions {
    std::string lemma;
    int trials = 100;
    std::uint64_t seed = 1;
    int k = 2;
    int jobs = 1;
    std::string save_dir;  // failing instances are written here when set
    ChiOptions chi;
};

struct InstanceRecord {
    std::uint64_t seed = 0;
    bool ok = true;
    double millis = 0;
    int regenerations = 0;  // NoSupportedLayer/RoutingFailed retries
    std::vector<std::string> failed;  // names of failed assertions
    std::map<std::string, long long> sizes;
    std::string instance_path;  // written on failure when save_dir is set
};

struct VerifyReport {
    std::string lemma;
    std::vector<InstanceRecord> records;
    int passed = 0;
    int failed = 0;
    std::map<std::string, long long> aggregates;

    std::string to_jsonl() const;  // one record per line plus a summary line
};

VerifyReport run_verify(const VerifyOptions& options);

bool known_lemma(const std::string& name);

}  // namespace grounded
