#pragma once

#include "ptsdist/generator.hpp"
#include "ptsdist/metric_result.hpp"
#include "ptsdist/testing_metrics.hpp"
#include "ptsdist/trace_metrics.hpp"

#include <optional>
#include <string>
#include <variant>

namespace ptsdist
{

enum class RelationKind
{
    tr_dis,
    tr_tbt,
    tr_sup,
    te_may,
    te_must,
    te_mm,
    te_tbt,
    te_sup
};

std::string to_string( RelationKind k );
// Accepts the names produced by to_string ("tr-dis", "te-must", ...).
std::optional< RelationKind > parse_relation_kind( const std::string& name );
bool is_testing( RelationKind k );

struct RelationQuery
{
    RelationKind kind = RelationKind::tr_tbt;
    bool equivalence = false; // false: preorder s below t
    SchedulerMode::Class scheduler = SchedulerMode::Class::det;
    unsigned depth = 1; // trace relations; testing ones use the full interaction depth
    const TestSuite* suite = nullptr;
    Limits limits = default_limits();
};

struct RelationOutcome
{
    bool holds = false;
    MetricResult measured; // the distance whose zero defines the relation
};

// The relation holds iff the matching hemimetric (preorder) or pseudometric
// (equivalence) is 0 at the given depth. On cyclic systems this is equivalence
// up to the depth. The witness of a failure is measured.witness.
RelationOutcome check_relation( const Pts& p, StateId s, StateId t, const RelationQuery& q );

// Which distance a robustness check measures.
struct MetricSelector
{
    std::variant< TraceMetricSpec, TestingMetricSpec > spec;
    const TestSuite* suite = nullptr; // testing only
};

// Distance between s and t honoring the selector's direction.
MetricResult measure( const Pts& p, StateId s, StateId t, const MetricSelector& sel );

enum class RobustView
{
    lower, // h(spec, impl)
    upper  // h(impl, spec)
};

std::string to_string( RobustView v );

enum class Verdict
{
    holds,
    fails,
    inconclusive
};

std::string to_string( Verdict v );

struct RobustnessVerdict
{
    Verdict verdict = Verdict::inconclusive;
    MetricResult measured;
    Rat epsilon;
    RobustView view = RobustView::lower;

    [[nodiscard]] bool holds() const { return verdict == Verdict::holds; }
};

// Measures the hemimetric between specification and implementation (placed side
// by side in one system) and compares it with epsilon. A truncated or grid
// value that leaves epsilon inside the uncertainty window is inconclusive.
RobustnessVerdict check_robustness( const Pts& spec, StateId spec_root, const Pts& impl, StateId impl_root,
                                    const Rat& epsilon, MetricSelector sel, RobustView view = RobustView::lower );

// Verdict for an already measured hemimetric.
Verdict robustness_verdict( const MetricResult& m, const Rat& epsilon );

struct BackwardCompatReport
{
    SystemClass cls = SystemClass::general;
    bool reference = false; // trace-set equality or trace-probability equality up to depth
    bool sup_det = false;
    bool sup_rand = false;

    [[nodiscard]] bool consistent() const { return reference == sup_det && reference == sup_rand; }
};

// For a fully nondeterministic or fully probabilistic system, compares the
// supremal-probabilities trace equivalences with the classical ones. Throws
// UnsupportedInput for general systems.
BackwardCompatReport check_backward_compat( const Pts& p, StateId s, StateId t, unsigned depth );

} // namespace ptsdist
