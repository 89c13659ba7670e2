#include "scimetrics/corpus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scimetrics/error.hpp"

namespace scim {

namespace {

template <typename T>
std::unordered_map<std::string, std::uint32_t> index_ids(const std::vector<T>& items,
                                                         const char* what) {
  std::unordered_map<std::string, std::uint32_t> index;
  index.reserve(items.size());
  for (std::uint32_t i = 0; i < items.size(); ++i) {
    if (!index.emplace(items[i].id, i).second)
      throw Error(ErrorCode::parse, std::string("duplicate ") + what + " id '" + items[i].id + "'");
  }
  return index;
}

}  // namespace

std::string LoadReport::to_text() const {
  std::ostringstream os;
  os << "load report: " << issues.size() << " issue(s), " << dangling_references
     << " dangling reference(s), " << dropped_downloads << " dropped download(s)\n";
  for (const auto& issue : issues)
    os << "  " << issue.kind << ": " << issue.from << " -> " << issue.to << "\n";
  return os.str();
}

Corpus Corpus::build(CorpusData data, std::optional<Date> snapshot_date, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  auto note = [&rep](std::string kind, std::string from, std::string to) {
    rep.issues.push_back({std::move(kind), std::move(from), std::move(to)});
  };

  Corpus c;
  c.paper_index_ = index_ids(data.papers, "paper");
  c.author_index_ = index_ids(data.authors, "author");
  c.unit_index_ = index_ids(data.units, "unit");
  auto journal_index = index_ids(data.journals, "journal");

  for (const auto& p : data.papers) {
    std::set<std::string_view> seen;
    for (const auto& r : p.references) {
      if (r == p.id)
        throw Error(ErrorCode::parse, "paper '" + p.id + "' cites itself");
      if (!seen.insert(r).second)
        throw Error(ErrorCode::parse, "paper '" + p.id + "' lists reference '" + r + "' twice");
    }
  }

  // Journals named only by papers are derived (name = id). When a journal
  // list was supplied the gap is also reported.
  const bool journals_supplied = !data.journals.empty();
  std::set<std::string> missing_journals;
  for (const auto& p : data.papers)
    if (!journal_index.contains(p.journal_id)) missing_journals.insert(p.journal_id);
  for (const auto& j : missing_journals) {
    if (journals_supplied) note("unknown_journal", j, j);
    data.journals.push_back({j, j});
  }

  const std::size_t n = data.papers.size();
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (PaperIndex i = 0; i < n; ++i) {
    const auto& p = data.papers[i];
    for (const auto& r : p.references) {
      auto it = c.paper_index_.find(r);
      if (it == c.paper_index_.end()) {
        note("dangling_reference", p.id, r);
        ++rep.dangling_references;
        continue;
      }
      edges.emplace_back(i, it->second);
      if (p.pub_date < data.papers[it->second].pub_date)
        c.anachronistic_.push_back({i, it->second});
    }
  }
  c.graph_ = CitationGraph::from_edges(n, std::move(edges));

  c.author_papers_.assign(data.authors.size(), {});
  for (PaperIndex i = 0; i < n; ++i) {
    for (const auto& a : data.papers[i].author_ids) {
      auto it = c.author_index_.find(a);
      if (it == c.author_index_.end()) {
        note("unknown_author", data.papers[i].id, a);
        continue;
      }
      auto& list = c.author_papers_[it->second];
      if (list.empty() || list.back() != i) list.push_back(i);
    }
  }
  for (PaperIndex i = 0; i < n; ++i)
    c.journal_papers_[data.papers[i].journal_id].push_back(i);

  c.unit_papers_.assign(data.units.size(), {});
  c.unit_members_.assign(data.units.size(), {});
  for (UnitIndex u = 0; u < data.units.size(); ++u) {
    const auto& unit = data.units[u];
    for (const auto& a : unit.author_ids) {
      auto it = c.author_index_.find(a);
      if (it == c.author_index_.end())
        note("unknown_member", unit.id, a);
      else
        c.unit_members_[u].push_back(it->second);
    }
    for (const auto& pid : unit.submitted_paper_ids) {
      auto it = c.paper_index_.find(pid);
      if (it == c.paper_index_.end())
        note("unknown_submission", unit.id, pid);
      else
        c.unit_papers_[u].push_back(it->second);
    }
  }
  for (AuthorIndex a = 0; a < data.authors.size(); ++a) {
    auto it = c.unit_index_.find(data.authors[a].unit_id);
    if (it != c.unit_index_.end()) c.unit_members_[it->second].push_back(a);
  }
  for (auto& m : c.unit_members_) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
  }

  std::optional<Date> max_date;
  auto observe = [&max_date](Date d) {
    if (!max_date || d > *max_date) max_date = d;
  };
  for (const auto& p : data.papers) observe(p.pub_date);

  c.paper_downloads_.assign(n, {});
  for (const auto& ev : data.downloads) {
    auto it = c.paper_index_.find(ev.paper_id);
    if (it == c.paper_index_.end()) {
      note("unknown_download_paper", ev.paper_id, format_date(ev.at));
      ++rep.dropped_downloads;
      continue;
    }
    if (ev.at < data.papers[it->second].pub_date) {
      note("download_before_publication", ev.paper_id, format_date(ev.at));
      ++rep.dropped_downloads;
      continue;
    }
    c.paper_downloads_[it->second].push_back(ev.at);
    observe(ev.at);
  }
  for (auto& d : c.paper_downloads_) std::sort(d.begin(), d.end());

  std::set<std::string> disciplines;
  for (const auto& p : data.papers) disciplines.insert(p.discipline_id);
  for (const auto& u : data.units) disciplines.insert(u.discipline_id);
  c.disciplines_.assign(disciplines.begin(), disciplines.end());

  std::set<std::string> criterion_disciplines;
  for (const auto& cr : data.criteria) {
    if (!criterion_disciplines.insert(cr.discipline_id).second)
      throw Error(ErrorCode::parse,
                  "duplicate criterion ranking for discipline '" + cr.discipline_id + "'");
    std::size_t units_in_discipline = 0;
    for (const auto& u : data.units) units_in_discipline += u.discipline_id == cr.discipline_id;
    for (const auto& [unit_id, rank] : cr.ranks) {
      auto it = c.unit_index_.find(unit_id);
      if (it == c.unit_index_.end())
        throw Error(ErrorCode::parse, "criterion names unknown unit '" + unit_id + "'");
      if (data.units[it->second].discipline_id != cr.discipline_id)
        throw Error(ErrorCode::parse, "criterion unit '" + unit_id +
                                          "' does not belong to discipline '" +
                                          cr.discipline_id + "'");
      if (rank < 1 || static_cast<std::size_t>(rank) > units_in_discipline)
        throw Error(ErrorCode::parse, "criterion rank " + std::to_string(rank) + " for unit '" +
                                          unit_id + "' outside 1.." +
                                          std::to_string(units_in_discipline));
    }
  }

  c.snapshot_date_ = snapshot_date ? *snapshot_date : max_date.value_or(Date{});
  c.data_ = std::move(data);
  return c;
}

std::optional<PaperIndex> Corpus::find_paper(std::string_view id) const {
  auto it = paper_index_.find(std::string(id));
  if (it == paper_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<AuthorIndex> Corpus::find_author(std::string_view id) const {
  auto it = author_index_.find(std::string(id));
  if (it == author_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<UnitIndex> Corpus::find_unit(std::string_view id) const {
  auto it = unit_index_.find(std::string(id));
  if (it == unit_index_.end()) return std::nullopt;
  return it->second;
}

bool Corpus::has_journal(std::string_view id) const {
  return std::any_of(data_.journals.begin(), data_.journals.end(),
                     [id](const Journal& j) { return j.id == id; });
}

std::span<const PaperIndex> Corpus::papers_of_journal(std::string_view journal_id) const {
  auto it = journal_papers_.find(std::string(journal_id));
  if (it == journal_papers_.end()) return {};
  return it->second;
}

std::optional<std::string> Corpus::author_discipline(AuthorIndex a) const {
  if (auto u = find_unit(data_.authors[a].unit_id)) return data_.units[*u].discipline_id;
  if (!author_papers_[a].empty()) return data_.papers[author_papers_[a].front()].discipline_id;
  return std::nullopt;
}

bool Corpus::has_discipline(std::string_view id) const {
  return std::binary_search(disciplines_.begin(), disciplines_.end(), id);
}

const CriterionRanking* Corpus::criterion(std::string_view discipline_id) const {
  for (const auto& c : data_.criteria)
    if (c.discipline_id == discipline_id) return &c;
  return nullptr;
}

ValidationReport validate_corpus(const Corpus& corpus) {
  ValidationReport r;
  for (const auto& e : corpus.anachronistic_edges()) {
    ++r.anachronistic_edges;
    r.details.push_back("anachronistic edge " + corpus.paper(e.citing).id + " -> " +
                        corpus.paper(e.cited).id);
  }
  for (const auto& a : corpus.authors()) {
    if (!corpus.find_unit(a.unit_id)) {
      ++r.orphan_authors;
      r.details.push_back("orphan author " + a.id + " (unit '" + a.unit_id + "')");
    }
  }
  for (UnitIndex u = 0; u < corpus.units().size(); ++u) {
    auto papers = corpus.submitted_papers(u);
    if (papers.empty()) {
      ++r.units_without_papers;
      r.details.push_back("unit " + corpus.unit(u).id + " has no papers");
    }
    auto members = corpus.members(u);
    for (PaperIndex p : papers) {
      bool attributed = false;
      for (const auto& aid : corpus.paper(p).author_ids) {
        auto a = corpus.find_author(aid);
        if (a && std::binary_search(members.begin(), members.end(), *a)) {
          attributed = true;
          break;
        }
      }
      if (!attributed) {
        ++r.unattributed_submissions;
        r.details.push_back("unit " + corpus.unit(u).id + " submits " + corpus.paper(p).id +
                            " without a member author");
      }
    }
  }
  return r;
}

Corpus snapshot_at(const Corpus& corpus, Date cutoff) {
  CorpusData data;
  const auto& src = corpus.data();
  std::set<std::string_view> kept;
  for (const auto& p : src.papers) {
    if (p.pub_date <= cutoff) {
      data.papers.push_back(p);
      kept.insert(p.id);
    }
  }
  data.authors = src.authors;
  data.units = src.units;
  for (auto& u : data.units)
    std::erase_if(u.submitted_paper_ids, [&kept](const std::string& id) { return !kept.contains(id); });
  data.journals = src.journals;
  for (const auto& d : src.downloads)
    if (d.at <= cutoff && kept.contains(d.paper_id)) data.downloads.push_back(d);
  data.criteria = src.criteria;
  return Corpus::build(std::move(data), cutoff);
}

}  // namespace scim
