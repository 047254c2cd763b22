#ifndef HYPERSTAR_HYPERSTAR_HPP
#define HYPERSTAR_HYPERSTAR_HPP

#include <hyperstar/collisions.hpp>
#include <hyperstar/combinatorics.hpp>
#include <hyperstar/distributions.hpp>
#include <hyperstar/error.hpp>
#include <hyperstar/hg_format.hpp>
#include <hyperstar/hypergraph.hpp>
#include <hyperstar/linalg.hpp>
#include <hyperstar/montecarlo.hpp>
#include <hyperstar/oracles.hpp>
#include <hyperstar/random.hpp>
#include <hyperstar/regime.hpp>
#include <hyperstar/sampler.hpp>
#include <hyperstar/spectral.hpp>
#include <hyperstar/star_matrix.hpp>

#endif // HYPERSTAR_HYPERSTAR_HPP
