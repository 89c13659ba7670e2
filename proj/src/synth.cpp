#include "scimetrics/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "scimetrics/error.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/rng.hpp"

namespace scim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Independent sub-streams, so changing one part of the generator leaves
// the draws of the others untouched.
enum Stream : std::uint64_t {
  kQuality = 1,
  kDrivers,
  kDates,
  kJournals,
  kOpenAccess,
  kCoauthors,
  kCitations,
  kDownloads,
  kTokens,
};

// Share of a paper's citations arriving 0..4 calendar years after its
// publication year.
constexpr std::array<double, 5> kLagProfile = {0.3, 0.3, 0.2, 0.12, 0.08};

constexpr double kEarlyDownloadMean = 40.0;
constexpr double kEarlyDownloadSd = 10.0;
constexpr double kLateDownloadMean = 10.0;

constexpr const char* kDisciplineNames[] = {"physics",   "chemistry",   "biology",
                                            "psychology", "economics",  "history",
                                            "linguistics", "mathematics"};
constexpr const char* kSyllables[] = {"ka", "lo", "mi", "ne", "ru", "sa", "ti", "vo",
                                      "xe", "zu", "be", "da", "fo", "gi", "hu", "pe"};
constexpr const char* kGeneralTokens[] = {"method", "result", "data",   "model",
                                          "analysis", "study", "theory", "evidence"};

std::string padded(const char* prefix, int value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width)
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return prefix + digits;
}

int width_for(int count) {
  int w = 1;
  for (int n = count; n >= 10; n /= 10) ++w;
  return std::max(w, 3);
}

std::string discipline_name(int d) {
  constexpr int known = static_cast<int>(std::size(kDisciplineNames));
  return d < known ? kDisciplineNames[d] : "field" + std::to_string(d + 1);
}

std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::vector<std::string> vocabulary(int discipline) {
  std::vector<std::string> words;
  const std::string stem = discipline_name(discipline).substr(0, 3);
  for (std::size_t i = 0; i < 40; ++i)
    words.push_back(stem + kSyllables[i % 16] + kSyllables[(i / 16 + i * 7) % 16]);
  return words;
}

double loading_of(const GeneratorConfig& c, std::string_view channel) {
  auto it = c.latent_loadings.find(std::string(channel));
  return it == c.latent_loadings.end() ? 0.0 : it->second;
}

[[noreturn]] void infeasible(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, "infeasible config: " + what);
}

}  // namespace

void check_config(const GeneratorConfig& c) {
  if (c.n_units < 1) infeasible("n_units must be positive");
  if (c.authors_per_unit < 1) infeasible("authors_per_unit must be positive");
  if (c.papers_per_author < 1) infeasible("papers_per_author must be positive");
  if (c.n_disciplines < 1 || c.n_disciplines > c.n_units)
    infeasible("n_disciplines must be between 1 and n_units");
  if (c.years < 2) infeasible("years must be at least 2");
  if (c.start_year < 1000 || c.start_year + c.years > 9999) infeasible("dates out of range");
  if (c.journals_per_discipline < 1) infeasible("journals_per_discipline must be positive");
  if (!(c.noise_sigma >= 0.0) || !std::isfinite(c.noise_sigma))
    infeasible("noise_sigma must be >= 0");
  if (!(c.oa_fraction >= 0.0 && c.oa_fraction <= 1.0)) infeasible("oa_fraction must be in [0,1]");
  if (!(c.oa_citation_multiplier > 0.0) || !std::isfinite(c.oa_citation_multiplier))
    infeasible("oa_citation_multiplier must be > 0");
  if (!(c.dl_cit_coupling >= 0.0 && c.dl_cit_coupling <= 1.0))
    infeasible("dl_cit_coupling must be in [0,1]");
  if (!(c.cross_rate >= 0.0 && c.cross_rate <= 1.0)) infeasible("cross_rate must be in [0,1]");
  if (!(c.base_citations >= 0.0) || !std::isfinite(c.base_citations))
    infeasible("base_citations must be >= 0");
  if (!std::isfinite(c.citation_scale)) infeasible("citation_scale must be finite");
  if (!(c.coauthor_rate >= 0.0) || !std::isfinite(c.coauthor_rate))
    infeasible("coauthor_rate must be >= 0");
  if (c.tokens_per_paper < 0) infeasible("tokens_per_paper must be >= 0");
  for (const auto& [name, l] : c.latent_loadings) {
    if (std::find(std::begin(kPlantedChannels), std::end(kPlantedChannels), name) ==
        std::end(kPlantedChannels))
      infeasible("no planted channel for metric '" + name + "'");
    if (!(std::abs(l) <= 1.0)) infeasible("loading of '" + name + "' must be in [-1,1]");
  }
}

std::map<std::string, double> planted_betas(const std::map<std::string, double>& loadings,
                                            double noise_sigma) {
  // Drivers x_j have covariance D + l l^T with D_j = 1 - l_j^2 + sigma^2;
  // Sherman-Morrison gives the regression of quality on them in closed form.
  const double s2 = noise_sigma * noise_sigma;
  std::map<std::string, double> betas;
  std::vector<std::string> exact;
  for (const auto& [name, l] : loadings)
    if (1.0 - l * l + s2 <= 0.0) exact.push_back(name);
  if (!exact.empty()) {
    // quality is observed without error; the minimum-norm solution splits it
    for (const auto& [name, l] : loadings) betas[name] = 0.0;
    for (const auto& name : exact)
      betas[name] = (loadings.at(name) > 0 ? 1.0 : -1.0) / static_cast<double>(exact.size());
    return betas;
  }
  double denom = 1.0;
  for (const auto& [name, l] : loadings) denom += l * l / (1.0 - l * l + s2);
  for (const auto& [name, l] : loadings)
    betas[name] = std::sqrt(1.0 + s2) * (l / (1.0 - l * l + s2)) / denom;
  return betas;
}

CriterionRanking ground_truth_criterion(const GroundTruth& truth, std::string_view discipline) {
  std::vector<std::pair<double, std::string>> units;
  for (const auto& [unit, d] : truth.unit_discipline)
    if (d == discipline) units.emplace_back(truth.quality.at(unit), unit);
  std::sort(units.begin(), units.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  CriterionRanking c;
  c.discipline_id = std::string(discipline);
  for (std::size_t i = 0; i < units.size(); ++i)
    c.ranks[units[i].second] = static_cast<int>(i + 1);
  return c;
}

GeneratedCorpus generate(const GeneratorConfig& c) {
  check_config(c);
  GeneratedCorpus out;
  CorpusData& data = out.data;
  GroundTruth& truth = out.truth;
  truth.seed = c.seed;

  const int n_units = c.n_units;
  const int n_authors = n_units * c.authors_per_unit;
  const int n_papers = n_authors * c.papers_per_author;
  const int unit_width = width_for(n_units);
  const int author_width = width_for(n_authors);
  const int paper_width = width_for(n_papers);
  const Date start = make_date(c.start_year, 1, 1);
  const Date end = make_date(c.start_year + c.years, 1, 1) - std::chrono::days{1};
  const auto span_days = (end - start).count() + 1;

  // ---- units and planted drivers ----
  Rng quality_rng(c.seed, kQuality);
  Rng driver_rng(c.seed, kDrivers);
  constexpr std::size_t kChannels = std::size(kPlantedChannels);
  std::vector<std::array<double, kChannels>> observed(n_units);
  std::vector<std::string> unit_ids;
  std::vector<int> unit_disc;
  for (int u = 0; u < n_units; ++u) {
    const double q = quality_rng.normal();
    unit_ids.push_back(padded("U", u + 1, unit_width));
    unit_disc.push_back(u % c.n_disciplines);
    truth.quality[unit_ids.back()] = q;
    truth.unit_discipline[unit_ids.back()] = discipline_name(unit_disc.back());
    for (std::size_t j = 0; j < kChannels; ++j) {
      const double l = loading_of(c, kPlantedChannels[j]);
      const double d = l * q + std::sqrt(std::max(0.0, 1.0 - l * l)) * driver_rng.normal();
      observed[u][j] = d + c.noise_sigma * driver_rng.normal();
      truth.drivers[unit_ids.back()][std::string(kPlantedChannels[j])] = observed[u][j];
    }
  }
  truth.true_betas = planted_betas(c.latent_loadings, c.noise_sigma);

  // ---- journals ----
  for (int d = 0; d < c.n_disciplines; ++d)
    for (int k = 1; k <= c.journals_per_discipline; ++k)
      data.journals.push_back({discipline_name(d) + "-j" + std::to_string(k),
                               "Journal of " + capitalized(discipline_name(d)) + " " +
                                   std::to_string(k)});
  std::sort(data.journals.begin(), data.journals.end(),
            [](const Journal& a, const Journal& b) { return a.id < b.id; });

  // ---- authors and papers ----
  Rng date_rng(c.seed, kDates);
  Rng journal_rng(c.seed, kJournals);
  Rng oa_rng(c.seed, kOpenAccess);
  Rng coauthor_rng(c.seed, kCoauthors);
  Rng token_rng(c.seed, kTokens);
  std::vector<std::vector<std::string>> vocab;
  for (int d = 0; d < c.n_disciplines; ++d) vocab.push_back(vocabulary(d));
  // Open access is an author habit: each unit has round(f * papers) OA
  // papers, held by a random subset of its authors (one may be partial).
  const int unit_papers = c.authors_per_unit * c.papers_per_author;
  const int oa_per_unit =
      static_cast<int>(std::lround(c.oa_fraction * static_cast<double>(unit_papers)));

  std::vector<int> paper_unit;
  data.units.resize(n_units);
  for (int u = 0; u < n_units; ++u) {
    Unit& unit = data.units[u];
    unit.id = unit_ids[u];
    unit.discipline_id = discipline_name(unit_disc[u]);
    const double funding = 100000.0 * (5.0 + observed[u][1]);
    unit.prior_funding = std::max(0.0, std::round(funding));
    unit.student_count = std::max<std::int64_t>(0, std::llround(20.0 + 5.0 * observed[u][2]));
    for (int i = 0; i < c.authors_per_unit; ++i)
      unit.author_ids.push_back(padded("A", u * c.authors_per_unit + i + 1, author_width));
  }
  for (int u = 0; u < n_units; ++u) {
    const int disc = unit_disc[u];
    const double coauthor_mean = c.coauthor_rate * std::exp(0.5 * observed[u][3]);
    std::vector<int> author_order(c.authors_per_unit);
    std::iota(author_order.begin(), author_order.end(), 0);
    oa_rng.shuffle(std::span<int>(author_order));
    std::vector<int> oa_count(c.authors_per_unit, 0);
    for (int i = 0, left = oa_per_unit; i < c.authors_per_unit; ++i) {
      oa_count[author_order[i]] = std::min(left, c.papers_per_author);
      left -= oa_count[author_order[i]];
    }
    for (int i = 0; i < c.authors_per_unit; ++i) {
      const int a = u * c.authors_per_unit + i;
      data.authors.push_back({data.units[u].author_ids[i], "Author " + std::to_string(a + 1),
                              unit_ids[u]});
      std::vector<int> order(c.papers_per_author);
      std::iota(order.begin(), order.end(), 0);
      oa_rng.shuffle(std::span<int>(order));
      std::vector<bool> is_oa(c.papers_per_author, false);
      for (int k = 0; k < oa_count[i]; ++k) is_oa[order[k]] = true;
      for (int k = 0; k < c.papers_per_author; ++k) {
        Paper p;
        p.id = padded("P", a * c.papers_per_author + k + 1, paper_width);
        p.discipline_id = discipline_name(disc);
        p.journal_id = discipline_name(disc) + "-j" +
                       std::to_string(1 + journal_rng.below(c.journals_per_discipline));
        // one paper per stratum of the span keeps every author's ages balanced
        const double frac = (static_cast<double>(k) + date_rng.uniform()) / c.papers_per_author;
        p.pub_date = start + std::chrono::days{static_cast<long>(
                                 std::floor(frac * static_cast<double>(span_days)))};
        p.is_oa = is_oa[k];
        p.author_ids.push_back(data.units[u].author_ids[i]);
        const auto wanted = std::min<std::int64_t>(coauthor_rng.poisson(coauthor_mean),
                                                   c.authors_per_unit - 1);
        std::set<int> chosen;
        while (static_cast<std::int64_t>(chosen.size()) < wanted) {
          const int other = static_cast<int>(coauthor_rng.below(c.authors_per_unit - 1));
          chosen.insert(other >= i ? other + 1 : other);
        }
        for (int o : chosen) p.author_ids.push_back(data.units[u].author_ids[o]);
        std::vector<std::string> tokens;
        const int general = c.tokens_per_paper / 4;
        for (int t = 0; t < c.tokens_per_paper; ++t) {
          if (t < general)
            tokens.push_back(kGeneralTokens[token_rng.below(std::size(kGeneralTokens))]);
          else
            tokens.push_back(vocab[disc][token_rng.below(vocab[disc].size())]);
        }
        p.title = tokens.size() >= 2 ? "On " + tokens.back() + " and " + tokens[tokens.size() - 2]
                                     : "Paper " + std::to_string(a * c.papers_per_author + k + 1);
        if (c.tokens_per_paper > 0) p.tokens = std::move(tokens);
        data.units[u].submitted_paper_ids.push_back(p.id);
        data.papers.push_back(std::move(p));
        paper_unit.push_back(u);
      }
    }
  }

  // ---- citations ----
  // Papers of each discipline (and of all other disciplines) in date order.
  const auto by_date = [&](std::uint32_t x, std::uint32_t y) {
    const auto& px = data.papers[x];
    const auto& py = data.papers[y];
    if (px.pub_date != py.pub_date) return px.pub_date < py.pub_date;
    return x < y;
  };
  std::vector<std::vector<std::uint32_t>> same_pool(c.n_disciplines);
  std::vector<std::vector<std::uint32_t>> cross_pool(c.n_disciplines);
  for (std::uint32_t p = 0; p < data.papers.size(); ++p)
    for (int d = 0; d < c.n_disciplines; ++d)
      (unit_disc[paper_unit[p]] == d ? same_pool[d] : cross_pool[d]).push_back(p);
  for (int d = 0; d < c.n_disciplines; ++d) {
    std::sort(same_pool[d].begin(), same_pool[d].end(), by_date);
    std::sort(cross_pool[d].begin(), cross_pool[d].end(), by_date);
  }

  Rng cite_rng(c.seed, kCitations);
  std::vector<std::vector<std::uint32_t>> citers(data.papers.size());
  // Noiseless runs round each unit's running expected total, so unit totals
  // track quality instead of tying on per-paper rounding.
  std::vector<double> expected_so_far(n_units, 0.5);
  for (std::uint32_t p = 0; p < data.papers.size(); ++p) {
    const Paper& paper = data.papers[p];
    const int u = paper_unit[p];
    double lambda = c.base_citations * std::exp(c.citation_scale * observed[u][0]);
    if (paper.is_oa) lambda *= c.oa_citation_multiplier;
    std::int64_t count;
    if (c.noise_sigma > 0.0) {
      const double s = c.noise_sigma;
      lambda *= std::exp(s * cite_rng.normal() - s * s / 2.0);
      count = cite_rng.poisson(lambda);
    } else {
      const double before = expected_so_far[u];
      expected_so_far[u] += lambda;
      count = static_cast<std::int64_t>(std::floor(expected_so_far[u]) - std::floor(before));
    }
    const int year = year_of(paper.pub_date);

    // Candidate citers per (pool, lag year): later-dated papers only.
    struct Bucket {
      const std::vector<std::uint32_t>* pool;
      std::size_t lo, hi;
      double weight;
      std::set<std::uint32_t> taken;
    };
    std::array<std::vector<Bucket>, 2> buckets;  // [0] same discipline, [1] cross
    for (int side = 0; side < 2; ++side) {
      const auto& pool = side == 0 ? same_pool[unit_disc[u]] : cross_pool[unit_disc[u]];
      for (std::size_t k = 0; k < kLagProfile.size(); ++k) {
        const Date year_start = make_date(year + static_cast<int>(k), 1, 1);
        const Date year_end = make_date(year + static_cast<int>(k) + 1, 1, 1);
        const Date from = std::max(year_start, paper.pub_date + std::chrono::days{1});
        auto lo = std::lower_bound(pool.begin(), pool.end(), from, [&](std::uint32_t x, Date d) {
          return data.papers[x].pub_date < d;
        });
        auto hi = std::lower_bound(lo, pool.end(), year_end, [&](std::uint32_t x, Date d) {
          return data.papers[x].pub_date < d;
        });
        if (lo == hi) continue;
        buckets[side].push_back({&pool, static_cast<std::size_t>(lo - pool.begin()),
                                 static_cast<std::size_t>(hi - pool.begin()), kLagProfile[k], {}});
      }
    }
    for (std::int64_t n = 0; n < count; ++n) {
      int side = cite_rng.uniform() < c.cross_rate ? 1 : 0;
      auto open_weight = [&](int s) {
        double w = 0.0;
        for (const auto& b : buckets[s])
          if (b.taken.size() < b.hi - b.lo) w += b.weight;
        return w;
      };
      double total = open_weight(side);
      if (total <= 0.0) {
        side = 1 - side;
        total = open_weight(side);
      }
      if (total <= 0.0) break;  // every later paper already cites this one
      double pick = cite_rng.uniform() * total;
      Bucket* bucket = nullptr;
      for (auto& b : buckets[side]) {
        if (b.taken.size() >= b.hi - b.lo) continue;
        bucket = &b;
        if (pick < b.weight) break;
        pick -= b.weight;
      }
      std::uint32_t citer;
      do {
        citer = (*bucket->pool)[bucket->lo + cite_rng.below(bucket->hi - bucket->lo)];
      } while (bucket->taken.count(citer));
      bucket->taken.insert(citer);
      citers[p].push_back(citer);
    }
  }
  for (std::uint32_t p = 0; p < data.papers.size(); ++p)
    for (std::uint32_t citer : citers[p]) data.papers[citer].references.push_back(data.papers[p].id);
  for (auto& paper : data.papers) std::sort(paper.references.begin(), paper.references.end());

  // ---- downloads ----
  // Early downloads track standardized later citations with correlation rho.
  std::vector<double> later(data.papers.size(), 0.0);
  double sum = 0.0, sum_sq = 0.0;
  std::size_t eligible = 0;
  for (std::uint32_t p = 0; p < data.papers.size(); ++p) {
    const Date pub = data.papers[p].pub_date;
    for (std::uint32_t citer : citers[p])
      if (months_between(pub, data.papers[citer].pub_date) >= 12) later[p] += 1.0;
    if (months_between(pub, end) >= 12) {
      sum += later[p];
      sum_sq += later[p] * later[p];
      ++eligible;
    }
  }
  double later_mean = 0.0, later_sd = 0.0;
  if (eligible > 1) {
    later_mean = sum / static_cast<double>(eligible);
    later_sd = std::sqrt(std::max(0.0, (sum_sq - static_cast<double>(eligible) * later_mean * later_mean) /
                                           static_cast<double>(eligible - 1)));
  }
  Rng download_rng(c.seed, kDownloads);
  const double rho = c.dl_cit_coupling;
  const double rest = std::sqrt(1.0 - rho * rho);
  for (std::uint32_t p = 0; p < data.papers.size(); ++p) {
    const Paper& paper = data.papers[p];
    const double z = later_sd > 0.0 ? (later[p] - later_mean) / later_sd : 0.0;
    const double noise = download_rng.normal();
    const auto early = std::max<std::int64_t>(
        0, std::llround(kEarlyDownloadMean + kEarlyDownloadSd * (rho * z + rest * noise)));
    const Date six = add_months(paper.pub_date, 6);
    const Date thirty_six = add_months(paper.pub_date, 36);
    const auto early_days = (six - paper.pub_date).count();
    const auto late_days = (thirty_six - six).count();
    std::vector<Date> dates;
    for (std::int64_t i = 0; i < early; ++i)
      dates.push_back(paper.pub_date + std::chrono::days{static_cast<long>(download_rng.below(early_days))});
    const auto late = download_rng.poisson(kLateDownloadMean);
    for (std::int64_t i = 0; i < late; ++i)
      dates.push_back(six + std::chrono::days{static_cast<long>(download_rng.below(late_days))});
    std::sort(dates.begin(), dates.end());
    for (Date d : dates)
      if (d <= end) data.downloads.push_back({paper.id, d});
  }

  // ---- criterion ----
  std::vector<std::string> names;
  for (int d = 0; d < c.n_disciplines; ++d) names.push_back(discipline_name(d));
  std::sort(names.begin(), names.end());
  for (const auto& name : names) truth.criteria.push_back(ground_truth_criterion(truth, name));
  data.criteria = truth.criteria;
  return out;
}

std::string truth_json(const GroundTruth& truth) {
  ordered_json j;
  j["seed"] = truth.seed;
  ordered_json quality = ordered_json::object();
  for (const auto& [unit, q] : truth.quality) quality[unit] = round9(q);
  j["quality"] = quality;
  ordered_json discipline = ordered_json::object();
  for (const auto& [unit, d] : truth.unit_discipline) discipline[unit] = d;
  j["unit_discipline"] = discipline;
  ordered_json betas = ordered_json::object();
  for (const auto& [metric, b] : truth.true_betas) betas[metric] = round9(b);
  j["true_betas"] = betas;
  ordered_json drivers = ordered_json::object();
  for (const auto& [unit, channels] : truth.drivers) {
    ordered_json row = ordered_json::object();
    for (const auto& [metric, x] : channels) row[metric] = round9(x);
    drivers[unit] = row;
  }
  j["drivers"] = drivers;
  ordered_json criteria = ordered_json::array();
  for (const auto& c : truth.criteria) {
    ordered_json ranks = ordered_json::object();
    for (const auto& [unit, r] : c.ranks) ranks[unit] = r;
    criteria.push_back({{"discipline_id", c.discipline_id}, {"ranks", ranks}});
  }
  j["criterion"] = criteria;
  return j.dump(2) + "\n";
}

std::string config_json(const GeneratorConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["n_units"] = c.n_units;
  j["authors_per_unit"] = c.authors_per_unit;
  j["papers_per_author"] = c.papers_per_author;
  j["n_disciplines"] = c.n_disciplines;
  ordered_json loadings = ordered_json::object();
  for (const auto& [metric, l] : c.latent_loadings) loadings[metric] = round9(l);
  j["latent_loadings"] = loadings;
  j["noise_sigma"] = round9(c.noise_sigma);
  j["oa_fraction"] = round9(c.oa_fraction);
  j["oa_citation_multiplier"] = round9(c.oa_citation_multiplier);
  j["dl_cit_coupling"] = round9(c.dl_cit_coupling);
  j["years"] = c.years;
  j["start_year"] = c.start_year;
  j["journals_per_discipline"] = c.journals_per_discipline;
  j["cross_rate"] = round9(c.cross_rate);
  j["base_citations"] = round9(c.base_citations);
  j["citation_scale"] = round9(c.citation_scale);
  j["coauthor_rate"] = round9(c.coauthor_rate);
  j["tokens_per_paper"] = c.tokens_per_paper;
  return j.dump(2) + "\n";
}

GeneratorConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("generator config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "generator config must be an object");
  GeneratorConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "n_units") c.n_units = value.get<int>();
      else if (key == "authors_per_unit") c.authors_per_unit = value.get<int>();
      else if (key == "papers_per_author") c.papers_per_author = value.get<int>();
      else if (key == "n_disciplines") c.n_disciplines = value.get<int>();
      else if (key == "latent_loadings") c.latent_loadings = value.get<std::map<std::string, double>>();
      else if (key == "noise_sigma") c.noise_sigma = value.get<double>();
      else if (key == "oa_fraction") c.oa_fraction = value.get<double>();
      else if (key == "oa_citation_multiplier") c.oa_citation_multiplier = value.get<double>();
      else if (key == "dl_cit_coupling") c.dl_cit_coupling = value.get<double>();
      else if (key == "years") c.years = value.get<int>();
      else if (key == "start_year") c.start_year = value.get<int>();
      else if (key == "journals_per_discipline") c.journals_per_discipline = value.get<int>();
      else if (key == "cross_rate") c.cross_rate = value.get<double>();
      else if (key == "base_citations") c.base_citations = value.get<double>();
      else if (key == "citation_scale") c.citation_scale = value.get<double>();
      else if (key == "coauthor_rate") c.coauthor_rate = value.get<double>();
      else if (key == "tokens_per_paper") c.tokens_per_paper = value.get<int>();
      else throw Error(ErrorCode::invalid_argument, "unknown generator setting '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("generator config: ") + e.what());
  }
  check_config(c);
  return c;
}

void write_generated(const GeneratedCorpus& generated, const std::filesystem::path& dir) {
  write_corpus(generated.data, dir);
  std::ofstream out(dir / "truth.json", std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + (dir / "truth.json").string() + "'");
  out << truth_json(generated.truth);
}

}  // namespace scim
