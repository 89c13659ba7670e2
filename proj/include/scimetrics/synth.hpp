#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scimetrics/corpus.hpp"

namespace scim {

// Metrics a unit's latent quality can be planted into.
inline constexpr std::string_view kPlantedChannels[] = {"citation_count", "prior_funding",
                                                        "student_count", "coauthorship"};

struct GeneratorConfig {
  std::uint64_t seed = 42;
  int n_units = 40;
  int authors_per_unit = 5;
  int papers_per_author = 10;
  int n_disciplines = 2;
  // Loading of each planted channel on quality, in [-1, 1].
  // Prior funding tracks quality most closely (the Matthew Effect premise).
  std::map<std::string, double> latent_loadings = {{"citation_count", 0.85},
                                                   {"prior_funding", 0.95},
                                                   {"student_count", 0.5},
                                                   {"coauthorship", 0.2}};
  double noise_sigma = 0.1;
  double oa_fraction = 0.5;
  double oa_citation_multiplier = 2.0;
  double dl_cit_coupling = 0.7;
  int years = 10;

  // Secondary knobs.
  int start_year = 2000;
  int journals_per_discipline = 2;
  double cross_rate = 0.1;       // share of citations from other disciplines
  double base_citations = 8.0;   // expected citations of an average non-OA paper
  double citation_scale = 0.5;   // log-citation change per unit of the citation driver
  double coauthor_rate = 0.3;    // expected co-authors per paper at average driver
  int tokens_per_paper = 8;
};

struct GroundTruth {
  std::uint64_t seed = 0;
  std::map<std::string, double> quality;           // unit -> latent quality
  std::map<std::string, std::string> unit_discipline;
  std::map<std::string, double> true_betas;        // population standardized betas
  // unit -> planted channel -> observed driver (loading, uniqueness and noise)
  std::map<std::string, std::map<std::string, double>> drivers;
  std::vector<CriterionRanking> criteria;          // one per discipline, sorted by id
};

struct GeneratedCorpus {
  CorpusData data;
  GroundTruth truth;
};

/// Throws invalid_argument ("infeasible config: ...") for bad settings.
void check_config(const GeneratorConfig& config);

/// Seeded synthetic corpus. Units draw quality ~ N(0,1); each planted
/// channel j gets driver l_j q + sqrt(1 - l_j^2) e_j, observed with noise
/// sigma. Bit-identical output for identical configs.
GeneratedCorpus generate(const GeneratorConfig& config);

/// Ranks the units of `discipline` by descending quality; equal qualities
/// are ordered by unit id.
CriterionRanking ground_truth_criterion(const GroundTruth& truth, std::string_view discipline);

/// Standardized betas of quality on the observed planted drivers.
std::map<std::string, double> planted_betas(const std::map<std::string, double>& loadings,
                                            double noise_sigma);

/// Ingestion files plus truth.json.
void write_generated(const GeneratedCorpus& generated, const std::filesystem::path& dir);

std::string truth_json(const GroundTruth& truth);
std::string config_json(const GeneratorConfig& config);
/// Fields absent from `json` keep their defaults; unknown fields throw.
GeneratorConfig config_from_json(std::string_view json);

}  // namespace scim
