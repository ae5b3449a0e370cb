#pragma once

#include "ptsdist/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ptsdist
{

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

// Finitely supported probability distribution. Entries are sorted by state,
// every probability is in (0, 1] and they sum to exactly 1.
struct Distribution
{
    std::vector< std::pair< StateId, Rat > > entries;

    static Distribution dirac( StateId s ) { return Distribution{ { { s, Rat( 1 ) } } }; }

    [[nodiscard]] bool is_dirac() const { return entries.size() == 1; }
    [[nodiscard]] Rat prob( StateId s ) const;
    [[nodiscard]] std::size_t size() const { return entries.size(); }

    friend bool operator==( const Distribution&, const Distribution& ) = default;
};

struct Transition
{
    StateId source = 0;
    ActionId label = 0;
    Distribution target;

    friend bool operator==( const Transition&, const Transition& ) = default;
};

// Name-based description of a system, before validation. Everything the text
// format and the builders produce goes through this form.
struct PtsDraft
{
    struct Trans
    {
        std::string source;
        std::string label;
        std::vector< std::pair< std::string, Rat > > target;
    };

    std::string name;
    std::vector< std::string > states;
    std::vector< std::string > actions;
    std::optional< std::string > init;
    std::vector< Trans > transitions;

    PtsDraft& state( const std::string& s );
    PtsDraft& action( const std::string& a );
    // Declares source, target states and the label on first use.
    PtsDraft& trans( const std::string& source, const std::string& label,
                     std::vector< std::pair< std::string, Rat > > target );
    PtsDraft& trans( const std::string& source, const std::string& label, const std::string& target );
};

// Validated, immutable system.
class Pts
{
    std::string _name;
    std::vector< std::string > _states;
    std::vector< std::string > _actions;
    std::vector< Transition > _transitions;
    std::vector< std::vector< std::size_t > > _out;
    std::optional< StateId > _root;
    std::unordered_map< std::string, StateId > _state_index;
    std::unordered_map< std::string, ActionId > _action_index;

    friend Pts validate_pts( const PtsDraft& draft );
    friend Pts make_pts( std::string name, std::vector< std::string > states, std::vector< std::string > actions,
                         std::vector< Transition > transitions, std::optional< StateId > root );

public:
    Pts() = default;

    [[nodiscard]] const std::string& name() const { return _name; }
    [[nodiscard]] std::size_t num_states() const { return _states.size(); }
    [[nodiscard]] std::size_t num_actions() const { return _actions.size(); }
    [[nodiscard]] const std::vector< std::string >& state_names() const { return _states; }
    [[nodiscard]] const std::vector< std::string >& action_names() const { return _actions; }
    [[nodiscard]] const std::string& state_name( StateId s ) const { return _states.at( s ); }
    [[nodiscard]] const std::string& action_name( ActionId a ) const { return _actions.at( a ); }
    [[nodiscard]] const std::vector< Transition >& transitions() const { return _transitions; }
    [[nodiscard]] const Transition& transition( std::size_t i ) const { return _transitions.at( i ); }
    // Indices into transitions(), in declaration order.
    [[nodiscard]] const std::vector< std::size_t >& outgoing( StateId s ) const { return _out.at( s ); }
    [[nodiscard]] bool is_deadlock( StateId s ) const { return _out.at( s ).empty(); }
    [[nodiscard]] const std::optional< StateId >& root() const { return _root; }

    [[nodiscard]] std::optional< StateId > find_state( const std::string& name ) const;
    [[nodiscard]] std::optional< ActionId > find_action( const std::string& name ) const;
    [[nodiscard]] StateId state( const std::string& name ) const;
    [[nodiscard]] ActionId action( const std::string& name ) const;

    [[nodiscard]] PtsDraft to_draft() const;
};

// Builds a system from already resolved ids. Throws ValidationError on a broken invariant.
Pts make_pts( std::string name, std::vector< std::string > states, std::vector< std::string > actions,
              std::vector< Transition > transitions, std::optional< StateId > root );

// Lists every invariant violation of the draft; empty means valid.
std::vector< std::string > validation_report( const PtsDraft& draft );
// Throws ValidationError carrying validation_report() when the draft is invalid.
Pts validate_pts( const PtsDraft& draft );

// A test: a system with a terminal success state.
struct Npt
{
    Pts base;
    StateId success = 0;

    [[nodiscard]] const std::string& name() const { return base.name(); }
    [[nodiscard]] StateId root() const { return *base.root(); }
};

std::vector< std::string > npt_validation_report( const PtsDraft& draft, const std::string& success );
Npt validate_npt( const PtsDraft& draft, const std::string& success );

// Disjoint union of several systems. State names get a "block." prefix; a block
// name used twice becomes "block#2".
// Returns the union and, per input, the offset of its first state.
struct DisjointUnion
{
    Pts pts;
    std::vector< StateId > offsets;
};
DisjointUnion disjoint_union( const std::vector< const Pts* >& parts, const std::string& name = "union" );

using Trace = std::vector< ActionId >;
std::string trace_str( const Pts& p, const Trace& t );

} // namespace ptsdist
