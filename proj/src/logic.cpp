#include "bisimlab/logic.hpp"

#include "bisimlab/error.hpp"

#include <algorithm>
#include <map>

namespace bisimlab
{

std::vector<RankValue> state_ranks( const Lts& l )
{
    // Peel states whose successors are all ranked; whatever is never peeled
    // reaches a cycle.
    std::size_t n = l.num_states();
    std::vector<std::vector<StateId>> preds( n );
    std::vector<std::size_t> pending( n, 0 );
    for ( LabelId a = 0; a < l.num_labels(); ++a )
        for ( StateId s = 0; s < n; ++s )
            for ( StateId t : l.successors( a, s ) )
            {
                preds[ t ].push_back( s );
                ++pending[ s ];
            }

    std::vector<RankValue> out( n, RankValue::infinite() );
    std::vector<Nat> depth( n, 0 );
    std::vector<StateId> ready;
    for ( StateId s = 0; s < n; ++s )
        if ( pending[ s ] == 0 )
            ready.push_back( s );
    while ( !ready.empty() )
    {
        StateId t = ready.back();
        ready.pop_back();
        out[ t ] = RankValue::of( Ordinal::finite( depth[ t ] ) );
        for ( StateId s : preds[ t ] )
        {
            depth[ s ] = std::max( depth[ s ], depth[ t ] + 1 );
            if ( --pending[ s ] == 0 )
                ready.push_back( s );
        }
    }
    return out;
}

namespace
{

class Evaluator
{
    const Lts& _l;
    std::optional<std::vector<RankValue>> _ranks;

    const std::vector<RankValue>& ranks()
    {
        if ( !_ranks )
            _ranks = state_ranks( _l );
        return *_ranks;
    }

public:
    explicit Evaluator( const Lts& l ) : _l{ l } {}

    std::vector<bool> run( const Formula& f )
    {
        std::size_t n = _l.num_states();
        switch ( f.kind() )
        {
        case Formula::Kind::Top: return std::vector<bool>( n, true );
        case Formula::Kind::Not:
        {
            auto inner = run( f.body() );
            inner.flip();
            return inner;
        }
        case Formula::Kind::And:
        {
            std::vector<bool> out( n, true );
            for ( const Formula& g : f.operands() )
            {
                auto part = run( g );
                for ( StateId s = 0; s < n; ++s )
                    out[ s ] = out[ s ] && part[ s ];
            }
            return out;
        }
        case Formula::Kind::Diamond:
        {
            LabelId a = _l.label( f.label() );
            auto inner = run( f.body() );
            std::vector<bool> out( n, false );
            for ( StateId s = 0; s < n; ++s )
                out[ s ] = std::ranges::any_of( _l.successors( a, s ), [ & ]( StateId t ) { return inner[ t ]; } );
            return out;
        }
        case Formula::Kind::DepthAtLeast:
        {
            std::vector<bool> out( n );
            for ( StateId s = 0; s < n; ++s )
                out[ s ] = ranks()[ s ].at_least( f.ordinal() );
            return out;
        }
        }
        return {};
    }
};

} // namespace

std::vector<bool> extension( const Lts& l, const Formula& f )
{
    return Evaluator( l ).run( f );
}

bool eval( const Lts& l, StateId s, const Formula& f )
{
    if ( s >= l.num_states() )
        fail( ErrorKind::Domain, "evaluation at a non-state" );
    return extension( l, f )[ s ];
}

bool eval_depth( const LazyTree& t, const Seq& s, Ordinal beta )
{
    return rank( t, s ).at_least( beta );
}

Formula expand_depth_formula( Ordinal beta, std::size_t fuel, const std::string& label )
{
    Formula core = Formula::top();
    if ( beta.m > 0 )
    {
        std::vector<Formula> stages;
        stages.reserve( fuel );
        for ( std::size_t i = 0; i < fuel; ++i )
            stages.push_back( expand_depth_formula( { beta.m - 1, i }, fuel, label ) );
        core = Formula::conj( std::move( stages ) );
    }
    for ( Nat i = 0; i < beta.k; ++i )
        core = Formula::diamond( label, std::move( core ) );
    return core;
}

Partition logical_partition( const Lts& l, const std::vector<Formula>& fs )
{
    std::vector<std::vector<bool>> columns;
    columns.reserve( fs.size() );
    for ( const Formula& f : fs )
        columns.push_back( extension( l, f ) );

    std::map<std::vector<bool>, std::size_t> blocks;
    Partition out( l.num_states() );
    for ( StateId s = 0; s < l.num_states(); ++s )
    {
        std::vector<bool> row;
        row.reserve( fs.size() );
        for ( const auto& col : columns )
            row.push_back( col[ s ] );
        out[ s ] = blocks.try_emplace( std::move( row ), blocks.size() ).first->second;
    }
    return out;
}

std::vector<Formula> formula_closure( const Lts& l, std::size_t max_depth )
{
    // extension -> first (shallowest) formula found with it
    std::map<std::vector<bool>, Formula> known;
    auto add = [ & ]( Formula f ) {
        auto ext = extension( l, f );
        return known.try_emplace( std::move( ext ), std::move( f ) ).second;
    };

    add( Formula::top() );
    for ( std::size_t depth = 0; depth <= max_depth; ++depth )
    {
        // Boolean closure at this depth.
        bool grew = true;
        while ( grew )
        {
            grew = false;
            std::vector<Formula> current;
            for ( const auto& [ ext, f ] : known )
                current.push_back( f );
            for ( const Formula& f : current )
                grew = add( f.kind() == Formula::Kind::Not ? f.body() : Formula::negate( f ) ) || grew;
            for ( std::size_t i = 0; i < current.size(); ++i )
                for ( std::size_t j = i + 1; j < current.size(); ++j )
                    grew = add( Formula::conj( { current[ i ], current[ j ] } ) ) || grew;
        }
        if ( depth == max_depth )
            break;
        std::vector<Formula> current;
        for ( const auto& [ ext, f ] : known )
            current.push_back( f );
        for ( const Formula& f : current )
            for ( const std::string& label : l.labels() )
                add( Formula::diamond( label, f ) );
    }

    std::vector<Formula> out;
    out.reserve( known.size() );
    for ( auto& [ ext, f ] : known )
        out.push_back( std::move( f ) );
    return out;
}

} // namespace bisimlab
