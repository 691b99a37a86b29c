#pragma once

#include "csplace/error.hpp"
#include "csplace/frame_links.hpp"
#include "csplace/graph.hpp"
#include "csplace/heatmap.hpp"
#include "csplace/matrix.hpp"
#include "csplace/paths.hpp"
#include "csplace/pipeline.hpp"
#include "csplace/placement.hpp"
#include "csplace/ranking.hpp"
#include "csplace/split_matrix.hpp"
#include "csplace/trace.hpp"
