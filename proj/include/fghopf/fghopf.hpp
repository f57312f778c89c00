#pragma once

// Everything: algebra, series, Hopf algebras, formal groups, FAB arithmetic,
// the document format and the command-line front end.

#include <fghopf/cli.hpp>
#include <fghopf/constraints.hpp>
#include <fghopf/dsl.hpp>
#include <fghopf/error.hpp>
#include <fghopf/extended_hopf.hpp>
#include <fghopf/fab.hpp>
#include <fghopf/fgl.hpp>
#include <fghopf/generator.hpp>
#include <fghopf/hopf.hpp>
#include <fghopf/hopf_fgl.hpp>
#include <fghopf/poly.hpp>
#include <fghopf/report.hpp>
#include <fghopf/series.hpp>
