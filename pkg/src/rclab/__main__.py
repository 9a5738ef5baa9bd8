from rclab.cli import main
import sys
sys.exit(main())
