from graphext.cli import main

raise SystemExit(main())
