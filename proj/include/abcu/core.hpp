#pragma once

// Shared domain types for approval-based committee elections: instances,
// candidate sets, profiles, exact probabilities and group thresholds.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace abcu {

// Expression templates off: values may be bound to `auto` safely.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

using Voter = std::uint32_t;
using Candidate = std::uint32_t;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad ids, wrong committee size, ...).
struct InputError : Error {
  using Error::Error;
};

/// An operation was called outside its documented precondition.
struct PreconditionError : InputError {
  using InputError::InputError;
};

/// An exponential object would exceed the configured enumeration cap.
struct BudgetError : Error {
  BudgetError(std::string what, BigInt required, std::uint64_t cap)
      : Error(what + ": " + required.str() + " exceeds budget " +
              std::to_string(cap)),
        required_(std::move(required)),
        cap_(cap) {}

  const BigInt& required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  BigInt required_;
  std::uint64_t cap_;
};

/// Caps for plausible-profile and committee enumeration. Exceeding either is
/// a hard error, never a silent truncation.
struct Budget {
  std::uint64_t profiles = std::uint64_t{1} << 20;
  std::uint64_t committees = std::uint64_t{1} << 20;
};

// ---------------------------------------------------------------------------
// Instance
// ---------------------------------------------------------------------------

class Instance {
 public:
  Instance(std::size_t n, std::size_t m, std::size_t k) : n_(n), m_(m), k_(k) {
    if (n < 1) throw InputError("instance needs at least one voter");
    if (m < 1) throw InputError("instance needs at least one candidate");
    if (k < 1 || k > m)
      throw InputError("committee size k=" + std::to_string(k) +
                       " must satisfy 1 <= k <= m=" + std::to_string(m));
  }

  std::size_t voters() const noexcept { return n_; }
  std::size_t candidates() const noexcept { return m_; }
  std::size_t committee_size() const noexcept { return k_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t k_;
};

/// True iff a group of `group_size` voters reaches ell * n / k, compared by
/// cross-multiplication.
inline bool meets_threshold(std::size_t group_size, std::size_t ell,
                            const Instance& inst) {
  if (ell < 1) throw PreconditionError("threshold multiplier must be >= 1");
  // n, m, k are small; 128-bit products cannot overflow here.
  return static_cast<unsigned __int128>(group_size) * inst.committee_size() >=
         static_cast<unsigned __int128>(ell) * inst.voters();
}

/// Smallest group size meeting the ell-threshold, i.e. ceil(ell * n / k).
inline std::size_t min_group_size(std::size_t ell, const Instance& inst) {
  const std::size_t num = ell * inst.voters();
  const std::size_t k = inst.committee_size();
  return (num + k - 1) / k;
}

// ---------------------------------------------------------------------------
// CandidateSet
// ---------------------------------------------------------------------------

/// Set of candidate ids stored as a bitset. Trailing zero words are trimmed,
/// so two sets are equal iff they hold the same members. Ordering is
/// lexicographic over the ascending member lists.
class CandidateSet {
 public:
  CandidateSet() = default;
  CandidateSet(std::initializer_list<Candidate> members) {
    for (Candidate c : members) insert(c);
  }

  /// Canonical set from an arbitrary member list; every member must be < m.
  static CandidateSet from_members(std::span<const Candidate> members,
                                   std::size_t m) {
    CandidateSet s;
    for (Candidate c : members) {
      if (c >= m)
        throw InputError("candidate " + std::to_string(c) +
                         " out of range (m=" + std::to_string(m) + ")");
      s.insert(c);
    }
    return s;
  }

  /// {0, 1, ..., count-1}
  static CandidateSet prefix(std::size_t count) {
    CandidateSet s;
    for (std::size_t c = 0; c < count; ++c) s.insert(static_cast<Candidate>(c));
    return s;
  }

  bool contains(Candidate c) const noexcept {
    const std::size_t w = c / 64;
    return w < words_.size() && ((words_[w] >> (c % 64)) & 1u);
  }

  void insert(Candidate c) {
    const std::size_t w = c / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (c % 64);
  }

  void erase(Candidate c) {
    const std::size_t w = c / 64;
    if (w >= words_.size()) return;
    words_[w] &= ~(std::uint64_t{1} << (c % 64));
    trim();
  }

  std::size_t size() const noexcept {
    std::size_t total = 0;
    for (auto word : words_) total += static_cast<std::size_t>(std::popcount(word));
    return total;
  }

  bool empty() const noexcept { return words_.empty(); }

  bool intersects(const CandidateSet& other) const noexcept {
    const std::size_t len = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < len; ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  std::size_t intersection_size(const CandidateSet& other) const noexcept {
    const std::size_t len = std::min(words_.size(), other.words_.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < len; ++i)
      total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return total;
  }

  bool is_subset_of(const CandidateSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t theirs = i < other.words_.size() ? other.words_[i] : 0;
      if (words_[i] & ~theirs) return false;
    }
    return true;
  }

  CandidateSet& operator|=(const CandidateSet& other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  CandidateSet& operator&=(const CandidateSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
    trim();
    return *this;
  }

  friend CandidateSet operator|(CandidateSet a, const CandidateSet& b) { return a |= b; }
  friend CandidateSet operator&(CandidateSet a, const CandidateSet& b) { return a &= b; }

  /// Largest member + 1, or 0 when empty.
  std::size_t bound() const noexcept {
    if (words_.empty()) return 0;
    return (words_.size() - 1) * 64 + (64 - static_cast<std::size_t>(std::countl_zero(words_.back())));
  }

  std::vector<Candidate> members() const {
    std::vector<Candidate> out;
    for_each([&](Candidate c) { out.push_back(c); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        const int bit = std::countr_zero(word);
        f(static_cast<Candidate>(w * 64 + static_cast<std::size_t>(bit)));
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

  friend std::strong_ordering operator<=>(const CandidateSet& a, const CandidateSet& b) {
    const auto ma = a.members();
    const auto mb = b.members();
    return std::lexicographical_compare_three_way(ma.begin(), ma.end(), mb.begin(), mb.end());
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](Candidate c) {
      if (!first) out += ",";
      out += std::to_string(c);
      first = false;
    });
    return out + "}";
  }

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

using ApprovalSet = CandidateSet;
using Committee = CandidateSet;

/// Canonical form of a raw member list; throws InputError on ids >= m.
inline ApprovalSet canonicalize(std::span<const Candidate> members, std::size_t m) {
  return CandidateSet::from_members(members, m);
}

/// One deterministic world: voter i's approval set at index i.
using ApprovalProfile = std::vector<ApprovalSet>;

/// Throws unless `profile` has one in-range set per voter.
inline void check_profile(const Instance& inst, const ApprovalProfile& profile) {
  if (profile.size() != inst.voters())
    throw InputError("profile has " + std::to_string(profile.size()) +
                     " approval sets, expected n=" + std::to_string(inst.voters()));
  for (std::size_t i = 0; i < profile.size(); ++i)
    if (profile[i].bound() > inst.candidates())
      throw InputError("voter " + std::to_string(i) + " approves an out-of-range candidate");
}

/// Throws unless `w` is a size-k committee over the instance's candidates.
inline void check_committee(const Instance& inst, const Committee& w) {
  if (w.size() != inst.committee_size())
    throw PreconditionError("committee " + w.to_string() + " has size " +
                            std::to_string(w.size()) + ", expected k=" +
                            std::to_string(inst.committee_size()));
  if (w.bound() > inst.candidates())
    throw InputError("committee " + w.to_string() + " contains an out-of-range candidate");
}

// ---------------------------------------------------------------------------
// Probability
// ---------------------------------------------------------------------------

/// Exact probability in [0, 1], kept in lowest terms.
class Probability {
 public:
  Probability() = default;

  explicit Probability(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1)
      throw InputError("probability " + value_.str() + " outside [0,1]");
  }

  Probability(long num, long den) : Probability(make(num, den)) {}

  static Probability zero() { return Probability(); }
  static Probability one() { return Probability(Rational(1)); }

  /// Parses "num/den", an integer, or a finite decimal such as "0.6" (read
  /// exactly as 6/10 = 3/5).
  static Probability parse(std::string_view text) { return Probability(parse_rational(text)); }

  static Rational parse_rational(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  BigInt num() const { return boost::multiprecision::numerator(value_); }
  BigInt den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_interior() const { return value_ > 0 && value_ < 1; }

  Probability complement() const { return Probability(Rational(1) - value_); }

  friend Probability operator*(const Probability& a, const Probability& b) {
    Probability out;
    out.value_ = a.value_ * b.value_;
    return out;
  }
  Probability& operator*=(const Probability& other) {
    value_ *= other.value_;
    return *this;
  }

  friend bool operator==(const Probability& a, const Probability& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Probability& a, const Probability& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Always "num/den", including "0/1" and "1/1".
  std::string to_string() const { return num().str() + "/" + den().str(); }

  double approx() const { return static_cast<double>(value_); }

 private:
  static Rational make(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    return Rational(num, den);
  }

  Rational value_{0};
};

inline Rational Probability::parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw InputError("cannot parse probability \"" + std::string(text) + "\"");
  };
  auto digits_only = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) return fail();
    BigInt d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
    return Rational(BigInt(std::string(num)), d);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits_only(whole) || !digits_only(frac)) return fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(BigInt(std::string(whole)) * scale + BigInt(std::string(frac)), scale);
  }

  if (!digits_only(text)) return fail();
  return Rational(BigInt(std::string(text)));
}

// ---------------------------------------------------------------------------
// Small combinatorics helpers
// ---------------------------------------------------------------------------

inline BigInt binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

inline BigInt pow2(std::size_t e) { return BigInt(1) << e; }

/// Calls f(const std::vector<std::size_t>&) for each size-r subset of
/// {0..n-1} in lexicographic order; stops early when f returns false.
template <class F>
bool for_each_combination(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return true;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (!f(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Size-k committees over m candidates in lexicographic order. Throws
/// BudgetError when C(m, k) exceeds the committee cap.
template <class F>
bool for_each_committee(const Instance& inst, const Budget& budget, F&& f) {
  const BigInt count = binomial(inst.candidates(), inst.committee_size());
  if (count > budget.committees) throw BudgetError("committee count", count, budget.committees);
  return for_each_combination(inst.candidates(), inst.committee_size(), [&](const auto& idx) {
    Committee w;
    for (auto c : idx) w.insert(static_cast<Candidate>(c));
    return f(static_cast<const Committee&>(w));
  });
}

}  // namespace abcu
