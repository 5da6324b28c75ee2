#include "wkit/observable.hpp"

#include <algorithm>

#include "wkit/error.hpp"

namespace wkit {

Observable::Observable(AlgebraRef algebra, std::vector<GroupValue> atoms, std::vector<Label> labels)
    : algebra_(std::move(algebra)), atoms_(std::move(atoms)), labels_(std::move(labels)) {
  if (!algebra_) throw InvalidObservable("observable without an algebra");
  if (atoms_.empty()) throw InvalidObservable("observable needs at least one atom");
  if (atoms_.size() > FinSubset::max_ground) throw InvalidObservable("observables are limited to 16 atoms");
  const GroupSpec& group = algebra_->group();
  GroupValue total = group.zero();
  for (const auto& a : atoms_) {
    if (!group.owns(a)) throw InvalidObservable("atom " + to_string(a) + " is not in the algebra's group");
    if (!group.is_positive(a)) throw InvalidObservable("atom " + to_string(a) + " is not positive");
    total += a;
  }
  if (total != algebra_->unit())
    throw InvalidObservable("atoms sum to " + to_string(total) + ", not to the unit " + to_string(algebra_->unit()));
  const FinSubset all = FinSubset::full(atoms_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].name.empty() || labels_[i].name.find(',') != std::string::npos)
      throw InvalidObservable("bad label '" + labels_[i].name + "'");
    if (!labels_[i].atoms.subset_of(all)) throw InvalidObservable("label '" + labels_[i].name + "' selects missing atoms");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[j].name == labels_[i].name) throw InvalidObservable("duplicate label '" + labels_[i].name + "'");
  }
}

GroupValue Observable::sum(FinSubset selection) const {
  GroupValue total = algebra_->zero();
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (selection.contains(i)) total += atoms_[i];
  return total;
}

std::vector<GroundElement> Observable::ground() const {
  std::vector<GroundElement> out;
  out.reserve(labels_.size());
  for (const auto& l : labels_) out.push_back({l.name, sum(l.atoms)});
  return out;
}

std::vector<GroupValue> range(const Observable& obs) {
  std::vector<GroupValue> out;
  FinSubset::full(obs.atoms().size()).for_each_subset([&](FinSubset j) {
    GroupValue v = obs.sum(j);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  });
  return out;
}

namespace {

FinSubset meet_of_labels(const Observable& obs, const std::vector<FinSubset>& selections, FinSubset x) {
  FinSubset common = FinSubset::full(obs.atoms().size());
  for (std::size_t c = 0; c < selections.size(); ++c)
    if (x.contains(c)) common = common & selections[c];
  return common;
}

WitnessTable build(const Observable& obs, std::vector<GroundElement> ground, std::vector<FinSubset> selections) {
  try {
    validate_ground(*obs.algebra(), ground);
  } catch (const ContractViolation& e) {
    throw InvalidObservable(e.what());
  }
  return WitnessTable::from_function(obs.algebra(), std::move(ground),
                                     [&](FinSubset x) { return obs.sum(meet_of_labels(obs, selections, x)); });
}

}  // namespace

WitnessTable witness_from_observable(const Observable& obs) {
  std::vector<FinSubset> selections;
  for (const auto& l : obs.labels()) selections.push_back(l.atoms);
  return build(obs, obs.ground(), std::move(selections));
}

WitnessTable witness_from_observable(const Observable& obs, const std::vector<GroundElement>& ground) {
  std::vector<FinSubset> selections;
  for (const auto& g : ground) {
    auto l = std::find_if(obs.labels().begin(), obs.labels().end(),
                          [&](const Observable::Label& lab) { return lab.name == g.label; });
    if (l == obs.labels().end()) throw InvalidObservable("no labeling for '" + g.label + "'");
    if (obs.sum(l->atoms) != g.value)
      throw InvalidObservable("atoms labeled '" + g.label + "' sum to " + to_string(obs.sum(l->atoms)) + ", not " +
                              to_string(g.value));
    selections.push_back(l->atoms);
  }
  return build(obs, ground, std::move(selections));
}

GroupValue observable_delta(const Observable& obs, FinSubset x, FinSubset a) {
  if (!x.subset_of(a)) throw PreconditionError("X is not a subset of A");
  if (!a.subset_of(FinSubset::full(obs.labels().size()))) throw PreconditionError("A is not a set of labels");
  FinSubset kept = FinSubset::full(obs.atoms().size());
  FinSubset removed;
  for (std::size_t c = 0; c < obs.labels().size(); ++c) {
    if (x.contains(c))
      kept = kept & obs.labels()[c].atoms;
    else if (a.contains(c))
      removed = removed | obs.labels()[c].atoms;
  }
  return obs.sum(kept - removed);
}

namespace {

// Colexicographic: compare from the last coordinate backwards.
bool colex_less(const GroupValue& l, const GroupValue& r) {
  const auto a = l.entries();
  const auto b = r.entries();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Every integer vector v with 0 <= v <= u, v != 0, in colex order.
std::vector<GroupValue> atom_alphabet(const GroupValue& unit) {
  const auto u = unit.entries();
  std::vector<GroupValue> out;
  std::vector<Rational> cur(u.size(), 0);
  while (true) {
    GroupValue v(unit.kind(), unit.dim(), cur);
    if (!v.is_zero()) out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == u[i]) cur[i++] = 0;
    if (i == cur.size()) break;
    cur[i] += 1;
  }
  std::sort(out.begin(), out.end(), colex_less);
  return out;
}

class ObservableSearch {
 public:
  ObservableSearch(const AlgebraRef& algebra, const std::vector<GroundElement>& ground)
      : algebra_(algebra), ground_(ground), alphabet_(atom_alphabet(algebra->unit())) {}

  std::optional<Observable> run(std::size_t parts) {
    chosen_.clear();
    return extend(parts, 0, algebra_->zero());
  }

 private:
  std::optional<Observable> extend(std::size_t parts, std::size_t min_index, const GroupValue& partial) {
    if (chosen_.size() == parts) {
      if (partial != algebra_->unit()) return std::nullopt;
      return try_label();
    }
    for (std::size_t k = min_index; k < alphabet_.size(); ++k) {
      GroupValue next = partial + alphabet_[k];
      if (!algebra_->leq(next, algebra_->unit())) continue;
      chosen_.push_back(alphabet_[k]);
      if (auto found = extend(parts, k, next)) return found;
      chosen_.pop_back();
    }
    return std::nullopt;
  }

  std::optional<Observable> try_label() const {
    std::vector<Observable::Label> labels;
    const FinSubset all = FinSubset::full(chosen_.size());
    for (const auto& g : ground_) {
      std::optional<FinSubset> pick;
      all.for_each_subset([&](FinSubset j) {
        if (pick) return;
        GroupValue s = algebra_->zero();
        for (std::size_t i = 0; i < chosen_.size(); ++i)
          if (j.contains(i)) s += chosen_[i];
        if (s == g.value) pick = j;
      });
      if (!pick) return std::nullopt;
      labels.push_back({g.label, *pick});
    }
    return Observable(algebra_, chosen_, std::move(labels));
  }

  const AlgebraRef& algebra_;
  const std::vector<GroundElement>& ground_;
  std::vector<GroupValue> alphabet_;
  std::vector<GroupValue> chosen_;
};

}  // namespace

std::optional<Observable> find_observable(const AlgebraRef& algebra, const std::vector<GroundElement>& ground,
                                          std::size_t max_atoms) {
  if (algebra->group().kind() != GroupKind::zvec)
    throw UnsupportedInstance("observable search is only complete for the zvec backend");
  validate_ground(*algebra, ground);
  Rational norm = 0;
  for (const auto& e : algebra->unit().entries()) norm += e;
  if (Rational(static_cast<long>(max_atoms)) > norm)
    throw UnsupportedInstance("max_atoms exceeds the L1 norm of the unit");
  if (max_atoms > FinSubset::max_ground) throw UnsupportedInstance("observables are limited to 16 atoms");

  ObservableSearch search(algebra, ground);
  for (std::size_t parts = 1; parts <= max_atoms; ++parts)
    if (auto found = search.run(parts)) return found;
  return std::nullopt;
}

}  // namespace wkit
