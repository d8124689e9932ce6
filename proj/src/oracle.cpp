#include "heapgame/oracle.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "heapgame/strategy.hpp"

namespace heapgame::oracle {

std::uint32_t mex(std::span<const std::uint32_t> values) {
  // The answer is at most values.size().
  std::vector<char> seen(values.size() + 1, 0);
  for (std::uint32_t v : values)
    if (v < seen.size()) seen[v] = 1;
  return static_cast<std::uint32_t>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
}

GrundyTable::GrundyTable(std::size_t k, Tokens bound, std::size_t max_entries)
    : index_(std::make_shared<const PositionIndex>(k, bound, max_entries)),
      grundy_(index_->size(), kUnknownGrundy),
      outcome_(index_->size(), Outcome::unknown) {}

std::size_t GrundyTable::checked_rank(const Position& p) const {
  if (!index_->contains(p.heaps()))
    throw ResourceLimitError("position " + format_heaps(p.heaps()) +
                             " is outside the table (k=" + std::to_string(k()) +
                             ", bound=" + std::to_string(bound()) + ")");
  return index_->rank(p.heaps());
}

Verdict GrundyTable::classify(const Position& p) {
  const std::size_t root = checked_rank(p);
  std::vector<std::size_t> work{root};
  std::vector<std::size_t> pending;
  std::vector<Tokens> kept, scratch;
  while (!work.empty()) {
    const std::size_t r = work.back();
    if (outcome_[r] != Outcome::unknown) {
      work.pop_back();
      continue;
    }
    bool reaches_p = false;
    pending.clear();
    for_each_follower_rank(*index_, index_->tuple(r), kept, scratch, [&](std::size_t f) {
      if (outcome_[f] == Outcome::p) reaches_p = true;
      else if (outcome_[f] == Outcome::unknown) pending.push_back(f);
    });
    if (reaches_p || pending.empty()) {
      outcome_[r] = reaches_p ? Outcome::n : Outcome::p;
      work.pop_back();
    } else {
      work.insert(work.end(), pending.begin(), pending.end());
    }
  }
  return outcome_[root] == Outcome::p ? Verdict::P : Verdict::N;
}

std::uint32_t GrundyTable::grundy(const Position& p) {
  const std::size_t root = checked_rank(p);
  std::vector<std::size_t> work{root};
  std::vector<std::size_t> pending;
  std::vector<std::uint32_t> values;
  std::vector<Tokens> kept, scratch;
  while (!work.empty()) {
    const std::size_t r = work.back();
    if (grundy_[r] != kUnknownGrundy) {
      work.pop_back();
      continue;
    }
    values.clear();
    pending.clear();
    for_each_follower_rank(*index_, index_->tuple(r), kept, scratch, [&](std::size_t f) {
      if (grundy_[f] == kUnknownGrundy) pending.push_back(f);
      else values.push_back(grundy_[f]);
    });
    if (pending.empty()) {
      grundy_[r] = mex(values);
      work.pop_back();
    } else {
      work.insert(work.end(), pending.begin(), pending.end());
    }
  }
  return grundy_[root];
}

void GrundyTable::solve(Kernel kernel) {
  if (kernel == Kernel::serial) {
    grundy_ = grundy_serial(*index_);
    outcome_ = outcome_serial(*index_);
  } else {
    grundy_ = grundy_parallel(*index_);
    outcome_ = outcome_parallel(*index_);
  }
}

bool GrundyTable::grundy_complete() const noexcept {
  return std::find(grundy_.begin(), grundy_.end(), kUnknownGrundy) == grundy_.end();
}

namespace {
constexpr std::string_view kCsvMagic = "# heapgame grundy table v1";
}

void GrundyTable::write_csv(std::ostream& os) {
  if (!grundy_complete()) grundy_ = grundy_parallel(*index_);
  os << kCsvMagic << '\n' << "k,bound\n" << k() << ',' << bound() << '\n';
  std::string line;
  for (std::size_t r : index_->lexicographic()) {
    line.clear();
    for (Tokens h : index_->tuple(r)) {
      line += std::to_string(h);
      line += ',';
    }
    line += std::to_string(grundy_[r]);
    line += '\n';
    os << line;
  }
}

GrundyTable GrundyTable::read_csv(std::istream& is, std::size_t max_entries) {
  std::string line;
  auto next_line = [&](std::string_view what) {
    if (!std::getline(is, line)) throw DomainError("grundy table: missing " + std::string(what));
  };
  next_line("version header");
  if (line != kCsvMagic) throw DomainError("grundy table: unknown version header '" + line + "'");
  next_line("column header");
  if (line != "k,bound") throw DomainError("grundy table: expected 'k,bound' header");
  next_line("k,bound values");
  std::size_t k = 0;
  Tokens bound = 0;
  char comma = 0;
  std::istringstream head(line);
  if (!(head >> k >> comma >> bound) || comma != ',')
    throw DomainError("grundy table: malformed 'k,bound' line '" + line + "'");

  GrundyTable table(k, bound, max_entries);
  std::vector<Tokens> row(k);
  for (std::size_t r : table.index_->lexicographic()) {
    next_line("row");
    std::istringstream in(line);
    std::uint32_t g = 0;
    for (Tokens& h : row) {
      if (!(in >> h >> comma) || comma != ',') throw DomainError("grundy table: bad row '" + line + "'");
    }
    if (!(in >> g)) throw DomainError("grundy table: bad row '" + line + "'");
    auto want = table.index_->tuple(r);
    if (!std::equal(row.begin(), row.end(), want.begin()))
      throw DomainError("grundy table: row out of order '" + line + "'");
    table.grundy_[r] = g;
  }
  if (std::getline(is, line) && !line.empty())
    throw DomainError("grundy table: trailing data '" + line + "'");
  return table;
}

Verdict oracle_classify(const Position& p) {
  GrundyTable table(p.k(), p.heaps().back());
  return table.classify(p);
}

std::uint32_t oracle_grundy(const Position& p) {
  GrundyTable table(p.k(), p.heaps().back());
  return table.grundy(p);
}

std::string_view to_string(Disagreement::Kind kind) noexcept {
  switch (kind) {
    case Disagreement::Kind::classifier_mismatch: return "classifier_mismatch";
    case Disagreement::Kind::bad_winning_move: return "bad_winning_move";
    case Disagreement::Kind::p_follower: return "p_follower";
  }
  return "unknown";
}

AgreementReport exhaustive_agreement(std::size_t k, Tokens bound, Kernel kernel,
                                     std::size_t max_entries) {
  const PositionIndex index(k, bound, max_entries);
  const std::vector<Outcome> outcome =
      kernel == Kernel::serial ? outcome_serial(index) : outcome_parallel(index);

  AgreementReport report{k, bound, 0, 0, 0, 0, {}};
  auto flag = [&](Disagreement::Kind kind, const Position& p, std::string detail) {
    report.disagreements.push_back({kind, p, std::move(detail)});
  };

  for (std::size_t r : index.lexicographic()) {
    const Position p = index.position(r);
    ++report.positions_checked;
    const bool closed_form_p = is_p_position(p);
    const bool oracle_p = outcome[r] == Outcome::p;
    if (closed_form_p != oracle_p) {
      flag(Disagreement::Kind::classifier_mismatch, p,
           std::string("oracle says ") + (oracle_p ? "P" : "N") + ", closed form says " +
               (closed_form_p ? "P" : "N"));
    }

    if (closed_form_p) {
      ++report.p_positions;
      for (const Position& f : followers(p, kDefaultFollowerCap)) {
        ++report.p_followers_checked;
        if (is_p_position(f)) flag(Disagreement::Kind::p_follower, p, "follower " + format_heaps(f.heaps()));
      }
      continue;
    }

    ++report.winning_moves_checked;
    const Analysis a = analyze(p);
    if (!a.winning_move) {
      flag(Disagreement::Kind::bad_winning_move, p, "no move produced");
      continue;
    }
    if (auto why = legality_violation(p, *a.winning_move)) {
      flag(Disagreement::Kind::bad_winning_move, p, describe(*a.winning_move) + ": " + *why);
      continue;
    }
    const Position next = apply(p, *a.winning_move);
    if (!is_p_position(next) || outcome[index.rank(next.heaps())] != Outcome::p)
      flag(Disagreement::Kind::bad_winning_move, p,
           describe(*a.winning_move) + " lands on " + format_heaps(next.heaps()));
  }
  return report;
}

Tokens default_bound(std::size_t k) noexcept {
  if (k <= 3) return 15;
  if (k == 4) return 10;
  return 5;
}

}  // namespace heapgame::oracle
