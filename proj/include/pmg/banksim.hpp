// Copyright (c) the pmg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmg/smoother.hpp"

namespace pmg::banksim
{

/// Shared-memory geometry. For 8-byte words a request is served per
/// half-warp over banks/2 effective banks, which is the standard
/// simplification for fp64 traffic.
struct BankConfig
{
  int banks = 32;
  int bank_width_bytes = 4;
  int word_bytes = 8;
  int warp_size = 32;

  int words_per_bank_group() const { return word_bytes / bank_width_bytes; }
  int effective_banks() const { return banks / words_per_bank_group(); }
  int group_size() const { return warp_size / words_per_bank_group(); }
};

enum class Kernel
{
  basic,
  conflict_free
};

/// residual operates on the (2k+1)^d closure tensor, solver on the
/// (2k-1)^d interior one.
enum class Stage
{
  residual,
  solver
};

/// masked keeps the residual-stage thread grid and deactivates boundary
/// threads in place; linear renumbers the interior work onto contiguous
/// thread ids.
enum class Indexing
{
  masked,
  linear
};

enum class AccessKind
{
  shape_load,
  source_load,
  dest_store
};

struct Access
{
  int thread = 0;
  std::int64_t address = 0;  // in words, within the instruction's array
};

/// One shared-memory request of a single access group (half-warp for fp64).
struct Instruction
{
  AccessKind kind = AccessKind::source_load;
  int group = 0;
  std::vector<Access> accesses;
};

struct AccessTrace
{
  Kernel kernel = Kernel::basic;
  Stage stage = Stage::residual;
  Indexing indexing = Indexing::linear;
  int dir = 0;
  int degree = 1;
  BankConfig config;
  int block_threads = 0;             // allocation, sized by the residual stage
  std::vector<char> active;          // per-thread activity for this stage
  int divergent_warps = 0;           // warps mixing active and inactive threads
  std::vector<Instruction> instructions;
};

/// Replays the warp address arithmetic of the basic / conflict-free tensor
/// contraction kernels for one contraction direction of the 3D smoother.
AccessTrace generate_trace(Kernel kernel, Stage stage, int dir, int degree,
                           const BankConfig &config, Indexing indexing);

struct InstructionReport
{
  int wavefronts = 1;
  int excess = 0;
};

struct ConflictReport
{
  std::vector<InstructionReport> per_instruction;
  std::int64_t total_wavefronts = 0;
  std::int64_t total_excess = 0;
  int divergent_groups = 0;
};

/// Wavefronts per instruction: the maximum over banks of the number of
/// distinct addresses routed to that bank; identical addresses broadcast
/// and count once.
ConflictReport count_conflicts(const AccessTrace &trace, const BankConfig &config);

/// Analytic per-patch on-chip traffic of one smoothing step. Each tensor
/// contraction of size n contributes 2*n^(d+1) flops, n^d + n^2 word reads
/// and n^d word writes; the eigenvalue scaling contributes n^d multiplies.
struct TrafficCounts
{
  double flops = 0.0;
  double bytes_read = 0.0;
  double bytes_written = 0.0;
};

TrafficCounts shared_traffic_model(SmootherVariant variant, int degree, int dim,
                                   int word_bytes);

struct HardwareParams
{
  int sms = 108;
  int banks = 32;
  int bank_width_bytes = 4;
  double clock_ghz = 1.27;
};

/// B = #SMs x #banks x word length x clock, reported in binary TB/s
/// (17.145 for the A100 parameter set).
double onchip_bandwidth_tbps(const HardwareParams &hw);

/// On-chip roofline bound B * F / (d_r + d_w) in Tflop/s.
double onchip_roofline(double flops, double bytes_read, double bytes_written,
                       const HardwareParams &hw);

std::string to_string(Kernel k);
std::string to_string(Stage s);
std::string to_string(Indexing i);

}  // namespace pmg::banksim
