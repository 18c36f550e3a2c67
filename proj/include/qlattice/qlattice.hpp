#ifndef QLATTICE_QLATTICE_HPP
#define QLATTICE_QLATTICE_HPP

#include "qlattice/common.hpp"
#include "qlattice/cyclotomic.hpp"
#include "qlattice/gflinalg.hpp"
#include "qlattice/haction.hpp"
#include "qlattice/json_io.hpp"
#include "qlattice/lattice.hpp"
#include "qlattice/parallel.hpp"
#include "qlattice/qcombinatorics.hpp"
#include "qlattice/report.hpp"
#include "qlattice/scheme.hpp"
#include "qlattice/sjb.hpp"

#endif  // QLATTICE_QLATTICE_HPP
