#ifndef SALVETTI_SALVETTI_HPP
#define SALVETTI_SALVETTI_HPP

#include "arrangement.hpp"
#include "euclidean_matching.hpp"
#include "faces.hpp"
#include "flats.hpp"
#include "morse_homology.hpp"
#include "pipeline.hpp"
#include "projection.hpp"
#include "salvetti_complex.hpp"
#include "twisted_complex.hpp"
#include "visibility.hpp"

#endif
