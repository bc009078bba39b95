#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cwm/normalize.hpp"

namespace cwm {

using ClassId = std::uint32_t;  // 0 is Top
using RoleId = std::uint32_t;
using IndividualId = std::uint32_t;
using TermId = std::uint32_t;

inline constexpr ClassId kTop = 0;
inline constexpr std::uint32_t kNoIndex = 0xFFFFFFFFu;

// Fixed-width bitset over the class ids of one CompiledKB. Word-lexicographic
// ordering gives a stable canonical order for candidate types.
class ClassSet {
public:
  ClassSet() = default;
  explicit ClassSet(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  bool test(std::uint32_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::uint32_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }

  std::size_t count() const;

  template <class F>
  void for_each(F f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word) {
        unsigned bit = (unsigned)__builtin_ctzll(word);
        f((std::uint32_t)(w * 64 + bit));
        word &= word - 1;
      }
    }
  }

  bool subset_of(const ClassSet& other) const;

  friend bool operator==(const ClassSet&, const ClassSet&) = default;
  friend std::strong_ordering operator<=>(const ClassSet& a,
                                          const ClassSet& b) {
    return a.words_ <=> b.words_;
  }

  std::size_t hash() const;
  struct Hasher {
    std::size_t operator()(const ClassSet& s) const { return s.hash(); }
  };

private:
  std::vector<std::uint64_t> words_;
};

// Interned, rule-indexed form of a NormalizedKB. Immutable once compiled;
// shared by every saturation run against the same KB.
class CompiledKB {
public:
  static std::shared_ptr<const CompiledKB> compile(NormalizedKB nkb);

  std::size_t class_count() const { return class_names_.size(); }
  std::size_t role_count() const { return role_names_.size(); }
  std::size_t individual_count() const { return individual_names_.size(); }

  ClassId class_id(const std::string& name) const;
  const std::string& class_name(ClassId c) const { return class_names_[c]; }
  std::string display_name(ClassId c) const {
    return source_.display_name(class_names_[c]);
  }
  RoleId role_id(const std::string& name) const;
  const std::string& role_name(RoleId r) const { return role_names_[r]; }
  const std::string& individual_name(IndividualId i) const {
    return individual_names_[i];
  }

  const NormalizedKB& source() const { return source_; }
  const std::vector<ClassId>& distinguished() const { return distinguished_; }
  const std::vector<std::vector<std::pair<ClassId, std::int64_t>>>&
  typicality() const {
    return typicality_;
  }

  struct SupExistsAxiom {
    ClassId sub;
    RoleId role;
    ClassId filler;
    std::uint32_t slot;  // witness identity, one per axiom
  };

  // Rule indexes, keyed by the trigger position.
  std::vector<std::vector<ClassId>> sub_atomic;  // [lhs] -> sup*
  std::vector<std::vector<std::pair<ClassId, ClassId>>>
      conj_partner;  // [one operand] -> (other, sup)
  std::vector<std::vector<std::pair<RoleId, ClassId>>>
      subex_by_filler;  // [filler] -> (role, sup)
  std::vector<std::vector<std::pair<ClassId, ClassId>>>
      subex_by_role;  // [role] -> (filler, sup)
  std::vector<std::vector<SupExistsAxiom>> supex_by_sub;  // [sub]
  std::vector<SupExistsAxiom> supex_axioms;               // by slot
  std::vector<bool> is_bottom;                            // [class]
  std::vector<std::vector<ClassId>> nominal_classes_of;   // [individual]
  std::vector<std::uint32_t> nominal_owner;  // [class] -> individual or none
  std::vector<std::pair<IndividualId, ClassId>> concept_asserts;
  std::vector<std::tuple<IndividualId, RoleId, IndividualId>> role_asserts;

private:
  NormalizedKB source_;
  std::vector<std::string> class_names_;  // [0] = "Top"
  std::vector<std::string> role_names_;
  std::vector<std::string> individual_names_;
  std::unordered_map<std::string, ClassId> class_ids_;
  std::unordered_map<std::string, RoleId> role_ids_;
  std::unordered_map<std::string, IndividualId> individual_ids_;
  std::vector<ClassId> distinguished_;
  std::vector<std::vector<std::pair<ClassId, std::int64_t>>> typicality_;
};

// Bottom-up least-fixpoint engine for the EL-bottom rule set, semi-naive
// (each derived atom is processed once, against indexed rule heads).
//
// Instance mode derives inst/triple facts over ABox individuals, the
// prototype term and existential witnesses. Subclass mode runs the same
// rules context-tagged, seeding every class as a test term in its own
// context; inst(sub, sup) in context sub then means sub <= sup.
//
// Copyable: the candidate enumeration snapshots a run and extends the copy
// with more seeds, which is sound because the fixpoint is monotone in seeds.
class Saturation {
public:
  enum class Mode { instance, subclass };

  Saturation(std::shared_ptr<const CompiledKB> kb, Mode mode);

  // Instance mode. Individuals always denote, so seed_base creates a term
  // per declared individual even without assertions.
  void seed_base();
  TermId prototype();
  void seed_prototype(ClassId cls);
  bool inconsistent() const { return global_inconsistent_; }
  const ClassSet& prototype_classes() const;
  const ClassSet& classes_of(TermId t) const { return inst_[t]; }

  // Subclass mode.
  void activate_all_contexts();
  bool derived_subsumption(ClassId sub, ClassId sup) const;
  bool context_inconsistent(ClassId ctx) const {
    return ctx_inconsistent_[ctx];
  }

  // Drain the agenda to the least fixpoint (FIFO).
  void run();
  // Same fixpoint, pseudo-random processing order; used to test confluence.
  void run_shuffled(std::uint64_t agenda_seed);

  // Canonical, sorted textual form of every derived atom. Stable across
  // agenda orders and term-allocation orders.
  std::vector<std::string> derived_atoms() const;

  const CompiledKB& kb() const { return *kb_; }

private:
  struct TermKey {
    enum Kind : std::uint8_t { individual, prototype_t, witness, ctx_self };
    Kind kind;
    std::uint32_t index;
    std::uint32_t ctx;  // class id in subclass mode, kNoIndex otherwise
  };

  static std::uint64_t pack_key(const TermKey& k) {
    return (std::uint64_t(k.kind) << 62) |
           (std::uint64_t(k.index & 0x3FFFFFFFu) << 32) | k.ctx;
  }

  TermId ensure_term(TermKey key);
  void add_inst(TermId t, ClassId c);
  void add_edge(TermId x, RoleId r, TermId y);
  void link(TermId x, TermId a);
  void process_inst(TermId t, ClassId c);
  void process_edge(TermId x, RoleId r, TermId y);
  void mark_inconsistent(TermId t);
  std::string term_label(TermId t) const;

  struct Event {
    std::uint8_t kind;  // 0 inst, 1 edge
    TermId x;
    std::uint32_t a;  // class or role
    TermId y;
  };

  std::shared_ptr<const CompiledKB> kb_;
  Mode mode_;
  std::vector<TermKey> terms_;
  std::unordered_map<std::uint64_t, TermId> term_ids_;
  std::vector<ClassSet> inst_;
  std::vector<std::vector<std::pair<RoleId, TermId>>> out_, in_;
  std::unordered_set<std::uint64_t> edge_seen_;
  std::vector<std::vector<TermId>> aliases_;
  std::unordered_set<std::uint64_t> alias_seen_;
  std::vector<Event> agenda_;
  std::size_t cursor_ = 0;
  bool global_inconsistent_ = false;
  std::vector<bool> ctx_inconsistent_;
  std::vector<TermId> self_terms_;  // subclass mode, by class id
  TermId prototype_ = kNoIndex;
};

// Classification front end: one shared subclass saturation answering all
// strict subsumption queries for a compiled KB.
class StrictClassifier {
public:
  explicit StrictClassifier(std::shared_ptr<const CompiledKB> kb);

  // sub <= sup entailed, including vacuously (sub unsatisfiable).
  bool subsumes(ClassId sub, ClassId sup) const;
  bool unsatisfiable(ClassId c) const;
  const CompiledKB& kb() const { return *kb_; }

private:
  std::shared_ptr<const CompiledKB> kb_;
  Saturation sat_;
};

// Strict order over the distinguished concepts: h is more specific than j iff
// h is subsumed by j but not vice versa.
class SpecificityRelation {
public:
  SpecificityRelation() = default;
  explicit SpecificityRelation(std::size_t k) : k_(k), more_(k * k, false) {}
  std::size_t size() const { return k_; }
  bool more_specific(std::size_t h, std::size_t j) const {
    return more_[h * k_ + j];
  }
  void set(std::size_t h, std::size_t j, bool v = true) {
    more_[h * k_ + j] = v;
  }

private:
  std::size_t k_ = 0;
  std::vector<bool> more_;
};

SpecificityRelation compute_specificity(const StrictClassifier& classifier);

// False iff the ABox forces a contradiction. Unsatisfiable concepts with no
// instances leave the KB consistent.
bool is_consistent(const std::shared_ptr<const CompiledKB>& kb);

}  // namespace cwm
