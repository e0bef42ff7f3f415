#pragma once

#define EPSBALL_VERSION "1.0.0"
