#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dblie {

/// Exit codes of the command line front end.
enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_input = 2, exit_budget = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
///
///   catalog list
///   verify <operator|bracket> [--window N] [--cutoff M] [--pair "i,j;k,l"] [--leibniz]
///   verify --operator-file F | --bracket-file F
///   bracket eval <bracket> <a> <b>
///   ideal closure <bracket> --seed "<poly>" [--seed ...] [--window N] [--budget B]
///   simplicity <bracket> [--window N] [--seeds K] [--degree D]
///   module check <name> [--window N]
///   report --all [--quick]
///
/// Global options: --format text|jsonl, --timing, --rng-seed S.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dblie
