#pragma once

#include <string>
#include <vector>

#include "qq/exec.hpp"

namespace qq {

enum class CheckStatus { pass, fail, info };

const char* to_string(CheckStatus s);

struct InvariantResult {
    std::string module;
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct CheckConfig {
    unsigned enumeration_n_max = 14;
    unsigned list_n_max = 12;
    unsigned orbit_n_max = 12;
    unsigned lmax = 72;
    unsigned random_words = 200;
    Exec exec = Exec::parallel;
};

std::vector<InvariantResult> check_group_core(const CheckConfig& cfg);
std::vector<InvariantResult> check_enumeration(const CheckConfig& cfg);
std::vector<InvariantResult> check_population(const CheckConfig& cfg);
std::vector<InvariantResult> check_spectral(const CheckConfig& cfg);

/// All four modules in order.
std::vector<InvariantResult> run_checks(const CheckConfig& cfg = {});

/// True when no result has status fail.
bool all_passed(const std::vector<InvariantResult>& results);

}  // namespace qq
