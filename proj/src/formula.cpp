#include "bisimlab/formula.hpp"

#include "bisimlab/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

namespace bisimlab
{

Formula Formula::negate( Formula f )
{
    Formula out( Kind::Not );
    out._operands.push_back( std::move( f ) );
    return out;
}

Formula Formula::conj( std::vector<Formula> fs )
{
    Formula out( Kind::And );
    out._operands = std::move( fs );
    return out;
}

Formula Formula::diamond( std::string label, Formula f )
{
    Formula out( Kind::Diamond );
    out._label = std::move( label );
    out._operands.push_back( std::move( f ) );
    return out;
}

Formula Formula::depth_at_least( Ordinal beta )
{
    Formula out( Kind::DepthAtLeast );
    out._ordinal = beta;
    return out;
}

std::size_t Formula::modal_depth() const
{
    constexpr auto unbounded = std::numeric_limits<std::size_t>::max();
    switch ( _kind )
    {
    case Kind::Top: return 0;
    case Kind::DepthAtLeast: return _ordinal.m > 0 ? unbounded : static_cast<std::size_t>( _ordinal.k );
    case Kind::Diamond:
    {
        std::size_t inner = body().modal_depth();
        return inner == unbounded ? unbounded : inner + 1;
    }
    case Kind::Not:
    case Kind::And:
    {
        std::size_t best = 0;
        for ( const Formula& f : _operands )
            best = std::max( best, f.modal_depth() );
        return best;
    }
    }
    return 0;
}

std::size_t Formula::size() const
{
    std::size_t n = 1;
    for ( const Formula& f : _operands )
        n += f.size();
    return n;
}

std::string Formula::to_string() const
{
    switch ( _kind )
    {
    case Kind::Top: return "T";
    case Kind::Not: return "!" + body().to_string();
    case Kind::Diamond: return "<" + _label + ">" + body().to_string();
    case Kind::DepthAtLeast: return "phi[" + std::to_string( _ordinal.m ) + "." + std::to_string( _ordinal.k ) + "]";
    case Kind::And:
    {
        std::string out = "(";
        for ( std::size_t i = 0; i < _operands.size(); ++i )
        {
            if ( i > 0 )
                out += " & ";
            out += _operands[ i ].to_string();
        }
        return out + ")";
    }
    }
    return {};
}

namespace
{

class FormulaParser
{
    const std::string& _text;
    std::size_t _pos = 0;

    [[noreturn]] void error( const std::string& what ) const
    {
        fail( ErrorKind::Data, "formula parse error at offset " + std::to_string( _pos ) + ": " + what );
    }

    void skip_spaces()
    {
        while ( _pos < _text.size() && std::isspace( static_cast<unsigned char>( _text[ _pos ] ) ) )
            ++_pos;
    }

    bool accept( std::string_view token )
    {
        skip_spaces();
        if ( _text.compare( _pos, token.size(), token ) == 0 )
        {
            _pos += token.size();
            return true;
        }
        return false;
    }

    void expect( std::string_view token )
    {
        if ( !accept( token ) )
            error( "expected '" + std::string( token ) + "'" );
    }

    Nat number()
    {
        skip_spaces();
        Nat value = 0;
        auto [ ptr, ec ] = std::from_chars( _text.data() + _pos, _text.data() + _text.size(), value );
        if ( ec != std::errc{} )
            error( "expected a number" );
        _pos = static_cast<std::size_t>( ptr - _text.data() );
        return value;
    }

public:
    explicit FormulaParser( const std::string& text ) : _text{ text } {}

    Formula formula()
    {
        if ( accept( "phi[" ) )
        {
            Nat m = number();
            expect( "." );
            Nat k = number();
            expect( "]" );
            return Formula::depth_at_least( { m, k } );
        }
        if ( accept( "T" ) )
            return Formula::top();
        if ( accept( "!" ) )
            return Formula::negate( formula() );
        if ( accept( "<" ) )
        {
            std::size_t close = _text.find( '>', _pos );
            if ( close == std::string::npos || close == _pos )
                error( "unterminated or empty label" );
            std::string label = _text.substr( _pos, close - _pos );
            _pos = close + 1;
            return Formula::diamond( std::move( label ), formula() );
        }
        if ( accept( "(" ) )
        {
            std::vector<Formula> parts;
            if ( accept( ")" ) )
                return Formula::conj( {} );
            do
                parts.push_back( formula() );
            while ( accept( "&" ) );
            expect( ")" );
            return Formula::conj( std::move( parts ) );
        }
        error( "unexpected input" );
    }

    Formula whole()
    {
        Formula f = formula();
        skip_spaces();
        if ( _pos != _text.size() )
            error( "trailing input" );
        return f;
    }
};

} // namespace

Formula Formula::parse( const std::string& text )
{
    return FormulaParser( text ).whole();
}

} // namespace bisimlab
