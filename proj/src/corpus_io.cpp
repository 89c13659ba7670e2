#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "scimetrics/corpus.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/format.hpp"

namespace scim {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct LineSource {
  std::string file;
  std::size_t line = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse, file + ":" + std::to_string(line) + ": " + what);
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Calls `fn(line_text, source)` for each non-blank line.
template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
  const std::string text = read_file(path);
  LineSource src{path.filename().string(), 0};
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++src.line;
    auto t = trim(line);
    if (t.empty()) continue;
    fn(t, src);
  }
}

json parse_object(std::string_view text, const LineSource& src,
                  std::initializer_list<const char*> allowed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    src.fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) src.fail("expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) src.fail("unexpected field '" + it.key() + "'");
  }
  return j;
}

const json& field(const json& j, const char* name, const LineSource& src) {
  auto it = j.find(name);
  if (it == j.end()) src.fail(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& j, const char* name, const LineSource& src) {
  const auto& v = field(j, name, src);
  if (!v.is_string()) src.fail(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* name, const LineSource& src) {
  const auto& v = field(j, name, src);
  if (!v.is_array()) src.fail(std::string("field '") + name + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) src.fail(std::string("field '") + name + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Date date_field(std::string_view text, const LineSource& src) {
  try {
    return parse_date(text);
  } catch (const Error& e) {
    src.fail(e.what());
  }
}

std::vector<std::string> csv_fields(std::string_view line) { return split(line, ','); }

void expect_header(const fs::path& path, std::string_view expected) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string first;
  std::getline(in, first);
  if (trim(first) != expected)
    throw Error(ErrorCode::parse, path.filename().string() + ":1: expected header '" +
                                      std::string(expected) + "'");
}

std::vector<Paper> read_papers(const fs::path& path) {
  std::vector<Paper> out;
  std::set<std::string> ids;
  for_each_line(path, [&](std::string_view text, const LineSource& src) {
    auto j = parse_object(text, src,
                          {"id", "title", "journal_id", "discipline_id", "pub_date", "author_ids",
                           "is_oa", "references", "tokens"});
    Paper p;
    p.id = string_field(j, "id", src);
    p.title = string_field(j, "title", src);
    p.journal_id = string_field(j, "journal_id", src);
    p.discipline_id = string_field(j, "discipline_id", src);
    p.pub_date = date_field(string_field(j, "pub_date", src), src);
    p.author_ids = string_list(j, "author_ids", src);
    const auto& oa = field(j, "is_oa", src);
    if (!oa.is_boolean()) src.fail("field 'is_oa' must be a boolean");
    p.is_oa = oa.get<bool>();
    p.references = string_list(j, "references", src);
    if (j.contains("tokens") && !j["tokens"].is_null()) p.tokens = string_list(j, "tokens", src);
    if (!ids.insert(p.id).second) src.fail("duplicate paper id '" + p.id + "'");
    std::set<std::string_view> refs;
    for (const auto& r : p.references) {
      if (r == p.id) src.fail("paper '" + p.id + "' cites itself");
      if (!refs.insert(r).second) src.fail("duplicate reference '" + r + "'");
    }
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<Author> read_authors(const fs::path& path) {
  std::vector<Author> out;
  std::set<std::string> ids;
  for_each_line(path, [&](std::string_view text, const LineSource& src) {
    auto j = parse_object(text, src, {"id", "name", "unit_id"});
    Author a{string_field(j, "id", src), string_field(j, "name", src),
             string_field(j, "unit_id", src)};
    if (!ids.insert(a.id).second) src.fail("duplicate author id '" + a.id + "'");
    out.push_back(std::move(a));
  });
  return out;
}

std::vector<Unit> read_units(const fs::path& path) {
  std::vector<Unit> out;
  std::set<std::string> ids;
  for_each_line(path, [&](std::string_view text, const LineSource& src) {
    auto j = parse_object(text, src,
                          {"id", "discipline_id", "author_ids", "prior_funding", "student_count",
                           "submitted_paper_ids"});
    Unit u;
    u.id = string_field(j, "id", src);
    u.discipline_id = string_field(j, "discipline_id", src);
    u.author_ids = string_list(j, "author_ids", src);
    const auto& funding = field(j, "prior_funding", src);
    if (!funding.is_number() || funding.get<double>() < 0.0)
      src.fail("field 'prior_funding' must be a nonnegative number");
    u.prior_funding = funding.get<double>();
    const auto& students = field(j, "student_count", src);
    if (!students.is_number_integer() || students.get<std::int64_t>() < 0)
      src.fail("field 'student_count' must be a nonnegative integer");
    u.student_count = students.get<std::int64_t>();
    u.submitted_paper_ids = string_list(j, "submitted_paper_ids", src);
    if (!ids.insert(u.id).second) src.fail("duplicate unit id '" + u.id + "'");
    out.push_back(std::move(u));
  });
  return out;
}

std::vector<Journal> read_journals(const fs::path& path) {
  std::vector<Journal> out;
  std::set<std::string> ids;
  for_each_line(path, [&](std::string_view text, const LineSource& src) {
    auto j = parse_object(text, src, {"id", "name"});
    Journal jr{string_field(j, "id", src), string_field(j, "name", src)};
    if (!ids.insert(jr.id).second) src.fail("duplicate journal id '" + jr.id + "'");
    out.push_back(std::move(jr));
  });
  return out;
}

std::vector<DownloadEvent> read_downloads(const fs::path& path) {
  std::vector<DownloadEvent> out;
  if (!fs::exists(path)) return out;
  expect_header(path, "paper_id,date");
  bool header = true;
  for_each_line(path, [&](std::string_view text, const LineSource& src) {
    if (std::exchange(header, false)) return;
    auto f = csv_fields(text);
    if (f.size() != 2 || f[0].empty()) src.fail("expected 'paper_id,date'");
    out.push_back({f[0], date_field(trim(f[1]), src)});
  });
  return out;
}

std::vector<CriterionRanking> read_criteria(const fs::path& path, const std::vector<Unit>& units) {
  std::vector<CriterionRanking> out;
  if (!fs::exists(path)) return out;
  expect_header(path, "discipline_id,unit_id,rank");
  std::map<std::string, std::string> unit_discipline;
  for (const auto& u : units) unit_discipline[u.id] = u.discipline_id;
  std::map<std::string, std::size_t> slot;
  bool header = true;
  for_each_line(path, [&](std::string_view text, const LineSource& src) {
    if (std::exchange(header, false)) return;
    auto f = csv_fields(text);
    if (f.size() != 3) src.fail("expected 'discipline_id,unit_id,rank'");
    int rank = 0;
    try {
      std::size_t used = 0;
      rank = std::stoi(f[2], &used);
      if (used != trim(f[2]).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      src.fail("rank '" + f[2] + "' is not an integer");
    }
    auto it = unit_discipline.find(f[1]);
    if (it == unit_discipline.end()) src.fail("unresolved criterion unit '" + f[1] + "'");
    if (it->second != f[0])
      src.fail("unit '" + f[1] + "' belongs to discipline '" + it->second + "', not '" + f[0] + "'");
    auto [pos, fresh] = slot.emplace(f[0], out.size());
    if (fresh) out.push_back({f[0], {}});
    if (!out[pos->second].ranks.emplace(f[1], rank).second)
      src.fail("unit '" + f[1] + "' ranked twice");
  });
  return out;
}

// ---- writers ----

std::string papers_text(const CorpusData& d) {
  std::string out;
  for (const auto& p : d.papers) {
    ordered_json j;
    j["id"] = p.id;
    j["title"] = p.title;
    j["journal_id"] = p.journal_id;
    j["discipline_id"] = p.discipline_id;
    j["pub_date"] = format_date(p.pub_date);
    j["author_ids"] = p.author_ids;
    j["is_oa"] = p.is_oa;
    j["references"] = p.references;
    if (p.tokens) j["tokens"] = *p.tokens;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string authors_text(const CorpusData& d) {
  std::string out;
  for (const auto& a : d.authors) {
    ordered_json j;
    j["id"] = a.id;
    j["name"] = a.name;
    j["unit_id"] = a.unit_id;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string units_text(const CorpusData& d) {
  std::string out;
  for (const auto& u : d.units) {
    ordered_json j;
    j["id"] = u.id;
    j["discipline_id"] = u.discipline_id;
    j["author_ids"] = u.author_ids;
    j["prior_funding"] = u.prior_funding;
    j["student_count"] = u.student_count;
    j["submitted_paper_ids"] = u.submitted_paper_ids;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string journals_text(const CorpusData& d) {
  std::string out;
  for (const auto& jr : d.journals) {
    ordered_json j;
    j["id"] = jr.id;
    j["name"] = jr.name;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string downloads_text(const CorpusData& d) {
  std::string out = "paper_id,date\n";
  for (const auto& e : d.downloads) {
    out += e.paper_id;
    out += ',';
    out += format_date(e.at);
    out += '\n';
  }
  return out;
}

std::string criterion_text(const CorpusData& d) {
  std::string out = "discipline_id,unit_id,rank\n";
  for (const auto& c : d.criteria)
    for (const auto& [unit, rank] : c.ranks)
      out += c.discipline_id + "," + unit + "," + std::to_string(rank) + "\n";
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

CorpusPaths CorpusPaths::in_directory(const fs::path& dir) {
  CorpusPaths p;
  p.papers = dir / "papers.jsonl";
  p.authors = dir / "authors.jsonl";
  p.units = dir / "units.jsonl";
  p.downloads = dir / "downloads.csv";
  p.criterion = dir / "criterion.csv";
  if (fs::exists(dir / "journals.jsonl")) p.journals = dir / "journals.jsonl";
  return p;
}

ParsedCorpus parse_corpus(const CorpusPaths& paths, std::optional<Date> snapshot_date) {
  CorpusData data;
  data.papers = read_papers(paths.papers);
  data.authors = read_authors(paths.authors);
  data.units = read_units(paths.units);
  if (paths.journals) data.journals = read_journals(*paths.journals);
  data.downloads = read_downloads(paths.downloads);
  data.criteria = read_criteria(paths.criterion, data.units);
  LoadReport report;
  Corpus corpus = Corpus::build(std::move(data), snapshot_date, &report);
  return {std::move(corpus), std::move(report)};
}

void write_corpus(const CorpusData& data, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create '" + dir.string() + "': " + ec.message());
  write_text(dir / "papers.jsonl", papers_text(data));
  write_text(dir / "authors.jsonl", authors_text(data));
  write_text(dir / "units.jsonl", units_text(data));
  write_text(dir / "journals.jsonl", journals_text(data));
  write_text(dir / "downloads.csv", downloads_text(data));
  write_text(dir / "criterion.csv", criterion_text(data));
}

std::uint64_t fingerprint(const CorpusData& data) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(papers_text(data));
  mix(authors_text(data));
  mix(units_text(data));
  mix(journals_text(data));
  mix(downloads_text(data));
  mix(criterion_text(data));
  return h;
}

std::string load_report_json(const LoadReport& report) {
  ordered_json j;
  j["dangling_references"] = report.dangling_references;
  j["dropped_downloads"] = report.dropped_downloads;
  j["issues"] = ordered_json::array();
  for (const auto& i : report.issues)
    j["issues"].push_back({{"kind", i.kind}, {"from", i.from}, {"to", i.to}});
  return j.dump(2);
}

}  // namespace scim
