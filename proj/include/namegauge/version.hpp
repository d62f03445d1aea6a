#pragma once

#define NAMEGAUGE_VERSION "0.1.0"
