#include "cwm/saturation.hpp"

#include <algorithm>
#include <random>

#include "cwm/errors.hpp"

namespace cwm {

std::size_t ClassSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += (std::size_t)__builtin_popcountll(w);
  return n;
}

bool ClassSet::subset_of(const ClassSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::size_t ClassSet::hash() const {
  // FNV-1a over the words.
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return (std::size_t)h;
}

std::shared_ptr<const CompiledKB> CompiledKB::compile(NormalizedKB nkb) {
  auto kb = std::make_shared<CompiledKB>();
  kb->source_ = std::move(nkb);
  const NormalizedKB& src = kb->source_;

  kb->class_names_.push_back("Top");
  for (const auto& n : src.class_names) kb->class_names_.push_back(n);
  for (ClassId i = 0; i < kb->class_names_.size(); ++i)
    kb->class_ids_.emplace(kb->class_names_[i], i);
  kb->role_names_ = src.role_names;
  for (RoleId i = 0; i < kb->role_names_.size(); ++i)
    kb->role_ids_.emplace(kb->role_names_[i], i);
  kb->individual_names_ = src.individual_names;
  for (IndividualId i = 0; i < kb->individual_names_.size(); ++i)
    kb->individual_ids_.emplace(kb->individual_names_[i], i);

  std::size_t nc = kb->class_names_.size();
  kb->sub_atomic.resize(nc);
  kb->conj_partner.resize(nc);
  kb->subex_by_filler.resize(nc);
  kb->subex_by_role.resize(kb->role_names_.size());
  kb->supex_by_sub.resize(nc);
  kb->is_bottom.assign(nc, false);
  kb->nominal_classes_of.resize(kb->individual_names_.size());
  kb->nominal_owner.assign(nc, kNoIndex);

  for (const auto& ax : src.axioms) {
    if (const auto* a = std::get_if<SubAtomic>(&ax)) {
      kb->sub_atomic[kb->class_id(a->sub)].push_back(kb->class_id(a->sup));
    } else if (const auto* a = std::get_if<SubConj>(&ax)) {
      ClassId l = kb->class_id(a->left), r = kb->class_id(a->right),
              s = kb->class_id(a->sup);
      kb->conj_partner[l].push_back({r, s});
      if (r != l) kb->conj_partner[r].push_back({l, s});
    } else if (const auto* a = std::get_if<SubExists>(&ax)) {
      ClassId f = kb->class_id(a->filler), s = kb->class_id(a->sup);
      RoleId role = kb->role_id(a->role);
      kb->subex_by_filler[f].push_back({role, s});
      kb->subex_by_role[role].push_back({f, s});
    } else if (const auto* a = std::get_if<SupExists>(&ax)) {
      SupExistsAxiom sx{kb->class_id(a->sub), kb->role_id(a->role),
                        kb->class_id(a->filler),
                        (std::uint32_t)kb->supex_axioms.size()};
      kb->supex_axioms.push_back(sx);
      kb->supex_by_sub[sx.sub].push_back(sx);
    } else if (const auto* a = std::get_if<SubBot>(&ax)) {
      kb->is_bottom[kb->class_id(a->sub)] = true;
    } else {
      const auto& a2 = std::get<NominalClass>(ax);
      ClassId c = kb->class_id(a2.cls);
      IndividualId ind = [&] {
        auto it = kb->individual_ids_.find(a2.individual);
        if (it == kb->individual_ids_.end())
          throw ReasonerError("internal: nominal individual '" +
                              a2.individual + "' not in signature");
        return it->second;
      }();
      kb->nominal_owner[c] = ind;
      kb->nominal_classes_of[ind].push_back(c);
    }
  }

  for (const auto& ca : src.concept_asserts) {
    auto it = kb->individual_ids_.find(ca.individual);
    if (it == kb->individual_ids_.end())
      throw ReasonerError("internal: individual '" + ca.individual +
                          "' not in signature");
    kb->concept_asserts.push_back({it->second, kb->class_id(ca.cls)});
  }
  for (const auto& ra : src.role_asserts) {
    kb->role_asserts.push_back({kb->individual_ids_.at(ra.subject),
                                kb->role_id(ra.role),
                                kb->individual_ids_.at(ra.object)});
  }
  for (const auto& d : src.distinguished)
    kb->distinguished_.push_back(kb->class_id(d));
  kb->typicality_.resize(src.typicality.size());
  for (std::size_t i = 0; i < src.typicality.size(); ++i)
    for (const auto& t : src.typicality[i])
      kb->typicality_[i].push_back({kb->class_id(t.head), t.weight});
  return kb;
}

ClassId CompiledKB::class_id(const std::string& name) const {
  auto it = class_ids_.find(name);
  if (it == class_ids_.end())
    throw ReasonerError("unknown concept name '" + name + "'");
  return it->second;
}

RoleId CompiledKB::role_id(const std::string& name) const {
  auto it = role_ids_.find(name);
  if (it == role_ids_.end())
    throw ReasonerError("unknown role name '" + name + "'");
  return it->second;
}

Saturation::Saturation(std::shared_ptr<const CompiledKB> kb, Mode mode)
    : kb_(std::move(kb)), mode_(mode) {
  ctx_inconsistent_.assign(kb_->class_count(), false);
}

TermId Saturation::ensure_term(TermKey key) {
  auto [it, fresh] = term_ids_.try_emplace(pack_key(key), (TermId)terms_.size());
  if (!fresh) return it->second;
  TermId t = (TermId)terms_.size();
  terms_.push_back(key);
  inst_.emplace_back(kb_->class_count());
  out_.emplace_back();
  in_.emplace_back();
  aliases_.emplace_back();
  add_inst(t, kTop);  // every term is a Top instance
  if (key.kind == TermKey::individual)
    for (ClassId n : kb_->nominal_classes_of[key.index]) add_inst(t, n);
  return t;
}

void Saturation::add_inst(TermId t, ClassId c) {
  if (inst_[t].test(c)) return;
  inst_[t].set(c);
  agenda_.push_back({0, t, c, 0});
}

void Saturation::add_edge(TermId x, RoleId r, TermId y) {
  std::uint64_t k =
      (std::uint64_t(x) << 42) | (std::uint64_t(r) << 21) | std::uint64_t(y);
  if (!edge_seen_.insert(k).second) return;
  out_[x].push_back({r, y});
  in_[y].push_back({r, x});
  agenda_.push_back({1, x, r, y});
}

void Saturation::mark_inconsistent(TermId t) {
  if (mode_ == Mode::instance) {
    global_inconsistent_ = true;
  } else {
    ctx_inconsistent_[terms_[t].ctx] = true;
  }
}

// Terms classified into a nominal class denote the same element as its
// individual, so classes and edges flow both ways between them.
void Saturation::link(TermId x, TermId a) {
  std::uint64_t lo = std::min(x, a), hi = std::max(x, a);
  if (!alias_seen_.insert((lo << 32) | hi).second) return;
  aliases_[x].push_back(a);
  aliases_[a].push_back(x);
  inst_[a].for_each([&](ClassId c) { add_inst(x, c); });
  inst_[x].for_each([&](ClassId c) { add_inst(a, c); });
  auto mirror = [&](TermId from, TermId to) {
    auto out_snapshot = out_[from];
    for (auto [r, y] : out_snapshot) add_edge(to, r, y);
    auto in_snapshot = in_[from];
    for (auto [r, z] : in_snapshot) add_edge(z, r, to);
  };
  mirror(a, x);
  mirror(x, a);
}

void Saturation::process_inst(TermId t, ClassId c) {
  std::uint32_t ctx = terms_[t].ctx;
  if (kb_->is_bottom[c]) mark_inconsistent(t);
  for (ClassId sup : kb_->sub_atomic[c]) add_inst(t, sup);
  for (auto [other, sup] : kb_->conj_partner[c])
    if (inst_[t].test(other)) add_inst(t, sup);
  for (auto [role, sup] : kb_->subex_by_filler[c])
    for (std::size_t i = 0; i < in_[t].size(); ++i)
      if (in_[t][i].first == role) add_inst(in_[t][i].second, sup);
  for (const auto& ax : kb_->supex_by_sub[c]) {
    TermId w = ensure_term({TermKey::witness, ax.slot, ctx});
    add_edge(t, ax.role, w);
    add_inst(w, ax.filler);
  }
  if (std::uint32_t owner = kb_->nominal_owner[c]; owner != kNoIndex) {
    TermId a = ensure_term({TermKey::individual, owner, ctx});
    if (a != t) link(t, a);
  }
  for (std::size_t i = 0; i < aliases_[t].size(); ++i)
    add_inst(aliases_[t][i], c);
}

void Saturation::process_edge(TermId x, RoleId r, TermId y) {
  for (auto [filler, sup] : kb_->subex_by_role[r])
    if (inst_[y].test(filler)) add_inst(x, sup);
  for (std::size_t i = 0; i < aliases_[x].size(); ++i)
    add_edge(aliases_[x][i], r, y);
  for (std::size_t i = 0; i < aliases_[y].size(); ++i)
    add_edge(x, r, aliases_[y][i]);
}

void Saturation::run() {
  while (cursor_ < agenda_.size()) {
    Event e = agenda_[cursor_++];
    if (e.kind == 0)
      process_inst(e.x, e.a);
    else
      process_edge(e.x, e.a, e.y);
  }
  agenda_.clear();  // drained; keep copies cheap
  cursor_ = 0;
}

void Saturation::run_shuffled(std::uint64_t agenda_seed) {
  std::mt19937_64 rng(agenda_seed);
  while (cursor_ < agenda_.size()) {
    std::size_t pick = cursor_ + (std::size_t)(rng() % (agenda_.size() - cursor_));
    std::swap(agenda_[cursor_], agenda_[pick]);
    Event e = agenda_[cursor_++];
    if (e.kind == 0)
      process_inst(e.x, e.a);
    else
      process_edge(e.x, e.a, e.y);
  }
  agenda_.clear();
  cursor_ = 0;
}

void Saturation::seed_base() {
  for (IndividualId i = 0; i < kb_->individual_count(); ++i)
    ensure_term({TermKey::individual, i, kNoIndex});
  for (auto [ind, cls] : kb_->concept_asserts)
    add_inst(ensure_term({TermKey::individual, ind, kNoIndex}), cls);
  for (auto [a, r, b] : kb_->role_asserts)
    add_edge(ensure_term({TermKey::individual, a, kNoIndex}), r,
             ensure_term({TermKey::individual, b, kNoIndex}));
}

TermId Saturation::prototype() {
  if (prototype_ == kNoIndex)
    prototype_ = ensure_term({TermKey::prototype_t, 0, kNoIndex});
  return prototype_;
}

void Saturation::seed_prototype(ClassId cls) { add_inst(prototype(), cls); }

const ClassSet& Saturation::prototype_classes() const {
  return inst_[prototype_];
}

void Saturation::activate_all_contexts() {
  self_terms_.resize(kb_->class_count());
  for (ClassId q = 0; q < kb_->class_count(); ++q) {
    TermId self = ensure_term({TermKey::ctx_self, q, q});
    self_terms_[q] = self;
    add_inst(self, q);
    for (IndividualId i = 0; i < kb_->individual_count(); ++i)
      ensure_term({TermKey::individual, i, q});
    for (auto [ind, cls] : kb_->concept_asserts)
      add_inst(ensure_term({TermKey::individual, ind, q}), cls);
    for (auto [a, r, b] : kb_->role_asserts)
      add_edge(ensure_term({TermKey::individual, a, q}), r,
               ensure_term({TermKey::individual, b, q}));
  }
}

bool Saturation::derived_subsumption(ClassId sub, ClassId sup) const {
  return inst_[self_terms_[sub]].test(sup);
}

std::string Saturation::term_label(TermId t) const {
  const TermKey& k = terms_[t];
  std::string base;
  switch (k.kind) {
    case TermKey::individual:
      base = kb_->individual_name(k.index);
      break;
    case TermKey::prototype_t:
      base = "proto";
      break;
    case TermKey::witness:
      base = "w" + std::to_string(k.index);
      break;
    case TermKey::ctx_self:
      base = "self:" + kb_->class_name(k.index);
      break;
  }
  return base;
}

std::vector<std::string> Saturation::derived_atoms() const {
  std::vector<std::string> out;
  const char* pred = mode_ == Mode::instance ? "inst" : "inst_sc";
  const char* epred = mode_ == Mode::instance ? "triple" : "triple_sc";
  for (TermId t = 0; t < terms_.size(); ++t) {
    std::string ctx_suffix;
    if (mode_ == Mode::subclass)
      ctx_suffix = "," + kb_->class_name(terms_[t].ctx);
    inst_[t].for_each([&](ClassId c) {
      out.push_back(std::string(pred) + "(" + term_label(t) + "," +
                    kb_->class_name(c) + ctx_suffix + ")");
    });
    for (auto [r, y] : out_[t])
      out.push_back(std::string(epred) + "(" + term_label(t) + "," +
                    kb_->role_name(r) + "," + term_label(y) + ctx_suffix +
                    ")");
  }
  std::sort(out.begin(), out.end());
  return out;
}

StrictClassifier::StrictClassifier(std::shared_ptr<const CompiledKB> kb)
    : kb_(kb), sat_(kb, Saturation::Mode::subclass) {
  sat_.activate_all_contexts();
  sat_.run();
}

bool StrictClassifier::subsumes(ClassId sub, ClassId sup) const {
  // An unsatisfiable subject is subsumed by everything.
  return sat_.context_inconsistent(sub) || sat_.derived_subsumption(sub, sup);
}

bool StrictClassifier::unsatisfiable(ClassId c) const {
  return sat_.context_inconsistent(c);
}

SpecificityRelation compute_specificity(const StrictClassifier& classifier) {
  const auto& dist = classifier.kb().distinguished();
  SpecificityRelation rel(dist.size());
  for (std::size_t h = 0; h < dist.size(); ++h)
    for (std::size_t j = 0; j < dist.size(); ++j) {
      if (h == j) continue;
      if (classifier.subsumes(dist[h], dist[j]) &&
          !classifier.subsumes(dist[j], dist[h]))
        rel.set(h, j);
    }
  return rel;
}

bool is_consistent(const std::shared_ptr<const CompiledKB>& kb) {
  Saturation sat(kb, Saturation::Mode::instance);
  sat.seed_base();
  sat.run();
  return !sat.inconsistent();
}

}  // namespace cwm
