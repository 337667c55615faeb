#pragma once

#include <string_view>

#include "seqelim/bandit.hpp"
#include "seqelim/rng.hpp"

namespace seqelim {

enum class Algorithm { VT, VT_EE, PW, PW_EE, VT_Normal };

// "vt", "vt_ee", "pw", "pw_ee", "vt_normal"; parsing is case-insensitive and
// throws ValidationError for unknown names.
std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

// Dispatch on the algorithm.
RunOutcome run_algorithm(Algorithm algorithm, const BanditInstance& instance, const ElimConfig& cfg,
                         RngStream& stream);

// Each simulator consumes exactly one uniform from `stream` per arm draw, so
// stream.draws() advances by RunOutcome::total_samples. A run that reaches
// cfg.max_subrounds stops with terminated_by_cap set and returns the alive
// arm with the largest score (lowest index on ties).
// Invalid combinations of instance and config throw ValidationError.

// Vector at a time: every alive arm is sampled once per round, then every
// arm at least k successes behind the leader is eliminated.
RunOutcome run_vt(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream);

// VT with early elimination: after round j, if some arm has j successes,
// every alive arm with none is eliminated.
RunOutcome run_vt_ee(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream);

// Play the winner. A round is a sequence of subrounds; each subround draws
// once from every alive arm that has not failed in the round, in index
// order. After each subround the run stops if exactly one arm is still
// failure-free and leads every other arm (eliminated ones included) by k.
// The round ends when no alive arm is failure-free; then arms k behind the
// leader are eliminated.
RunOutcome run_pw(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream);

// PW with early elimination: an arm whose first j draws all fail is
// eliminated at its j-th draw, unless it is the last alive arm.
RunOutcome run_pw_ee(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream);

// VT with Normal rewards: reward = mean + sigma * Phi^{-1}(u); after each
// round, alive arms whose cumulative sum is more than c below the best
// alive sum are eliminated.
RunOutcome run_vt_normal(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream);

}  // namespace seqelim
