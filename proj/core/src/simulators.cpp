#include "seqelim/simulators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "seqelim/errors.hpp"
#include "seqelim/special_functions.hpp"

namespace seqelim {

namespace {

void validate(const BanditInstance& b, const ElimConfig& cfg, RewardKind reward, bool needs_j) {
  std::vector<std::string> errors;
  if (b.size() < 2) errors.emplace_back("instance: need at least 2 arms");
  if (b.reward != reward)
    errors.emplace_back(reward == RewardKind::Bernoulli ? "instance: Bernoulli rewards required"
                                                        : "instance: Normal rewards required");
  if (reward == RewardKind::Bernoulli) {
    if (!cfg.k) errors.emplace_back("k: required");
    else if (*cfg.k < 1) errors.emplace_back("k: must be >= 1");
    if (cfg.c) errors.emplace_back("c: not used with Bernoulli rewards");
  } else {
    if (!cfg.c) errors.emplace_back("c: required");
    else if (!(*cfg.c > 0.0) || !std::isfinite(*cfg.c)) errors.emplace_back("c: must be positive");
    if (cfg.k) errors.emplace_back("k: not used with Normal rewards");
  }
  if (needs_j) {
    if (!cfg.j) errors.emplace_back("j: required");
    else if (*cfg.j < 1) errors.emplace_back("j: must be >= 1");
  }
  if (cfg.max_subrounds < 1) errors.emplace_back("max_subrounds: must be >= 1");
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

void finish(RunOutcome& out, const ScoreBoard& board, const BanditInstance& b) {
  out.chosen = board.alive_count() == 1 ? board.first_alive() : board.leader();
  out.correct = out.chosen == b.best_index;
}

void record_early(RunOutcome& out, int arm, const BanditInstance& b) {
  if (arm == b.best_index) out.best_eliminated_early = true;
  else ++out.nonbest_eliminated_early;
}

RunOutcome vector_at_a_time(const BanditInstance& b, const ElimConfig& cfg, RngStream& stream,
                            std::optional<int> j) {
  const int n = b.size();
  const double k = *cfg.k;
  ScoreBoard board(n);
  RunOutcome out;
  while (board.alive_count() > 1) {
    if (out.rounds >= cfg.max_subrounds) {
      out.terminated_by_cap = true;
      break;
    }
    ++out.rounds;
    board.advance_round();
    for (int i = 0; i < n; ++i) {
      if (!board.alive(i)) continue;
      ++out.total_samples;
      if (stream.uniform() < b.means[static_cast<std::size_t>(i)]) board.add(i, 1.0);
    }
    if (j && out.rounds == *j && board.max_score() == static_cast<double>(*j)) {
      for (int i = 0; i < n; ++i) {
        if (board.alive(i) && board.score(i) == 0.0) {
          board.eliminate(i);
          record_early(out, i, b);
        }
      }
    }
    board.eliminate_trailing(k, true, ScoreBoard::Reference::AllArms);
  }
  finish(out, board, b);
  return out;
}

RunOutcome play_the_winner(const BanditInstance& b, const ElimConfig& cfg, RngStream& stream,
                           std::optional<int> j) {
  const int n = b.size();
  const double k = *cfg.k;
  ScoreBoard board(n);
  std::vector<std::int64_t> draws(static_cast<std::size_t>(n), 0);
  RunOutcome out;
  std::int64_t subrounds = 0;

  while (board.alive_count() > 1) {
    ++out.rounds;
    board.advance_round();
    board.start_round();
    while (board.failure_free_count() > 0 && board.alive_count() > 1) {
      if (subrounds >= cfg.max_subrounds) {
        out.terminated_by_cap = true;
        finish(out, board, b);
        return out;
      }
      ++subrounds;
      for (int i = 0; i < n; ++i) {
        if (board.failed(i)) continue;
        ++out.total_samples;
        const auto d = ++draws[static_cast<std::size_t>(i)];
        if (stream.uniform() < b.means[static_cast<std::size_t>(i)]) board.add(i, 1.0);
        else board.mark_failed(i);
        if (j && d == *j && board.score(i) == 0.0 && board.alive_count() > 1) {
          board.eliminate(i);
          record_early(out, i, b);
        }
      }
      if (board.failure_free_count() == 1) {
        int lone = 0;
        while (board.failed(lone)) ++lone;
        if (board.score(lone) >= board.max_score_excluding(lone) + k) {
          out.chosen = lone;
          out.correct = lone == b.best_index;
          return out;
        }
      }
    }
    board.eliminate_trailing(k, true, ScoreBoard::Reference::AllArms);
  }
  finish(out, board, b);
  return out;
}

}  // namespace

RunOutcome run_vt(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream) {
  validate(instance, cfg, RewardKind::Bernoulli, false);
  return vector_at_a_time(instance, cfg, stream, std::nullopt);
}

RunOutcome run_vt_ee(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream) {
  validate(instance, cfg, RewardKind::Bernoulli, true);
  return vector_at_a_time(instance, cfg, stream, cfg.j);
}

RunOutcome run_pw(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream) {
  validate(instance, cfg, RewardKind::Bernoulli, false);
  return play_the_winner(instance, cfg, stream, std::nullopt);
}

RunOutcome run_pw_ee(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream) {
  validate(instance, cfg, RewardKind::Bernoulli, true);
  return play_the_winner(instance, cfg, stream, cfg.j);
}

RunOutcome run_vt_normal(const BanditInstance& instance, const ElimConfig& cfg, RngStream& stream) {
  validate(instance, cfg, RewardKind::Normal, false);
  const int n = instance.size();
  const double c = *cfg.c;
  ScoreBoard board(n);
  RunOutcome out;
  while (board.alive_count() > 1) {
    if (out.rounds >= cfg.max_subrounds) {
      out.terminated_by_cap = true;
      break;
    }
    ++out.rounds;
    board.advance_round();
    for (int i = 0; i < n; ++i) {
      if (!board.alive(i)) continue;
      ++out.total_samples;
      board.add(i, instance.means[static_cast<std::size_t>(i)] +
                       instance.sigma * std_normal_quantile(stream.uniform()));
    }
    board.eliminate_trailing(c, false, ScoreBoard::Reference::AliveArms);
  }
  finish(out, board, instance);
  return out;
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::VT: return "vt";
    case Algorithm::VT_EE: return "vt_ee";
    case Algorithm::PW: return "pw";
    case Algorithm::PW_EE: return "pw_ee";
    case Algorithm::VT_Normal: return "vt_normal";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (Algorithm a : {Algorithm::VT, Algorithm::VT_EE, Algorithm::PW, Algorithm::PW_EE, Algorithm::VT_Normal})
    if (lower == to_string(a)) return a;
  throw ValidationError({"algorithm: unknown value '" + std::string(text) + "'"});
}

RunOutcome run_algorithm(Algorithm algorithm, const BanditInstance& instance, const ElimConfig& cfg,
                         RngStream& stream) {
  switch (algorithm) {
    case Algorithm::VT: return run_vt(instance, cfg, stream);
    case Algorithm::VT_EE: return run_vt_ee(instance, cfg, stream);
    case Algorithm::PW: return run_pw(instance, cfg, stream);
    case Algorithm::PW_EE: return run_pw_ee(instance, cfg, stream);
    case Algorithm::VT_Normal: return run_vt_normal(instance, cfg, stream);
  }
  throw ValidationError({"algorithm: unknown value"});
}

}  // namespace seqelim
