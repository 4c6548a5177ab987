from .cli import gol_main

raise SystemExit(gol_main())
