#pragma once
// Text checkpoint of a training run: every network parameter, the exploration
// noise state and the RNG state, stamped with a hash of the configuration.
// Floats are written as hexadecimal literals so save -> load -> save
// reproduces the file byte for byte.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "groupform/maddpg.hpp"

namespace groupform {

inline constexpr int kCheckpointVersion = 1;

/// Canonical `key=value` lines for the settings that shape a run.
std::string canonical_config(const EnvConfig& env, const TrainConfig& train);

/// 64-bit FNV-1a of canonical_config().
std::uint64_t config_hash(const EnvConfig& env, const TrainConfig& train);

void save_checkpoint(std::ostream& out, const MaddpgTrainer& trainer);

/// Restores parameters, noise and RNG into a trainer built with the same
/// configuration. Throws std::runtime_error on version, hash or shape
/// mismatch.
void load_checkpoint(std::istream& in, MaddpgTrainer& trainer);

}  // namespace groupform
