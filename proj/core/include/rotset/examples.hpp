#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotset/graph.hpp"

namespace rotset {

struct ExampleOptions {
  /// When set, bridge edges between classes get pseudo-random displacements
  /// in {-1, 0, 1} drawn from this seed instead of zero.
  std::optional<std::uint64_t> bridge_seed;
};

/// ceil(g/2) source tori R1.. feeding a genus-zero hub R0 that feeds
/// floor(g/2) sink tori R'1..; each torus carries loops Id, T1, T2 on its
/// own coordinate plane. Throws ValidationError for g < 2.
HorseshoeGraph gen_sharp(int g, const ExampleOptions& options = {});

/// The same g tori with no connections at all.
HorseshoeGraph gen_recurrent(int g);

/// Genus 4: sources S1, S2 and sinks S3, S4 with S1->S3 (through the
/// genus-zero vertex S0), S1->S4, S2->S3, S2->S4.
HorseshoeGraph gen_figtree(const ExampleOptions& options = {});

/// Genus 5: sources S1, S2, S3 into a genus-zero hub made of two rectangles
/// (S0, S0b) that feeds the sinks S'1, S'2.
HorseshoeGraph gen_figexample11(const ExampleOptions& options = {});

/// Genus 2. The first graph joins R_L (loops Id, T1, T1+T2) and R_R (loops
/// Id, T3, T3+T4) by chains of n rectangles in both directions, so it is
/// strongly connected; the second graph (the limit) drops the chains.
std::pair<HorseshoeGraph, HorseshoeGraph> gen_semicontinuity_pair(int n);

/// Family names accepted by `generate`.
const std::vector<std::string>& example_families();

/// Dispatch by family name. `size` is the genus for sharp/recurrent and the
/// chain length for semicontinuity; `limit` picks the limit graph there.
HorseshoeGraph generate(const std::string& family, int size, bool limit = false,
                        const ExampleOptions& options = {});

}  // namespace rotset
