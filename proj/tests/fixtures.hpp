#pragma once

// Small hand-built corpora for tests.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scimetrics/corpus.hpp"
#include "scimetrics/date.hpp"

namespace fx {

inline scim::Date d(const char* text) { return scim::parse_date(text); }

class CorpusBuilder {
 public:
  scim::CorpusData data;

  CorpusBuilder& journal(const std::string& id) {
    data.journals.push_back({id, "Journal " + id});
    return *this;
  }

  CorpusBuilder& unit(const std::string& id, const std::string& discipline, double funding = 0.0,
                      std::int64_t students = 0) {
    scim::Unit u;
    u.id = id;
    u.discipline_id = discipline;
    u.prior_funding = funding;
    u.student_count = students;
    data.units.push_back(u);
    return *this;
  }

  CorpusBuilder& author(const std::string& id, const std::string& unit_id) {
    data.authors.push_back({id, "Author " + id, unit_id});
    if (auto* u = find_unit(unit_id)) u->author_ids.push_back(id);
    return *this;
  }

  // Adds a paper; by default it is submitted by the units of its authors.
  CorpusBuilder& paper(const std::string& id, const std::string& discipline, const char* date,
                       std::vector<std::string> authors, std::vector<std::string> refs = {},
                       const std::string& journal = "J1", bool oa = false, bool submit = true) {
    scim::Paper p;
    p.id = id;
    p.title = "Paper " + id;
    p.journal_id = journal;
    p.discipline_id = discipline;
    p.pub_date = d(date);
    p.author_ids = authors;
    p.is_oa = oa;
    p.references = std::move(refs);
    data.papers.push_back(std::move(p));
    if (submit) {
      for (const auto& a : authors) {
        auto it = std::find_if(data.authors.begin(), data.authors.end(),
                               [&](const scim::Author& x) { return x.id == a; });
        if (it == data.authors.end()) continue;
        if (auto* u = find_unit(it->unit_id)) {
          auto& s = u->submitted_paper_ids;
          if (std::find(s.begin(), s.end(), id) == s.end()) s.push_back(id);
        }
      }
    }
    return *this;
  }

  CorpusBuilder& tokens(const std::string& paper_id, std::vector<std::string> toks) {
    for (auto& p : data.papers)
      if (p.id == paper_id) p.tokens = std::move(toks);
    return *this;
  }

  CorpusBuilder& download(const std::string& paper_id, const char* date, int times = 1) {
    for (int i = 0; i < times; ++i) data.downloads.push_back({paper_id, d(date)});
    return *this;
  }

  CorpusBuilder& criterion(const std::string& discipline, std::map<std::string, int> ranks) {
    data.criteria.push_back({discipline, std::move(ranks)});
    return *this;
  }

  scim::Corpus build(std::optional<scim::Date> snapshot = {}, scim::LoadReport* report = nullptr) const {
    return scim::Corpus::build(data, snapshot, report);
  }

 private:
  scim::Unit* find_unit(const std::string& id) {
    for (auto& u : data.units)
      if (u.id == id) return &u;
    return nullptr;
  }
};

}  // namespace fx
