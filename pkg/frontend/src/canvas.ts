// Canvas abstraction and plan executor. The interfaces mirror the subset of
// the Figma node API the plugin touches, so the real adapter is a thin cast
// and tests can substitute a recording mock. executePlan is all-or-nothing:
// any failure removes every node it created.

import { PlannedNode, RGBA } from './interpreter';

export interface FontName {
  family: string;
  style: string;
}

export interface SolidPaint {
  type: 'SOLID';
  color: { r: number; g: number; b: number };
  opacity: number;
}

export type CanvasEffect =
  | {
      type: 'DROP_SHADOW' | 'INNER_SHADOW';
      color: RGBA;
      offset: { x: number; y: number };
      radius: number;
      visible: boolean;
      blendMode: 'NORMAL';
    }
  | { type: 'LAYER_BLUR' | 'BACKGROUND_BLUR'; radius: number; visible: boolean };

export interface BaseHandle {
  name: string;
  x: number;
  y: number;
  resize(width: number, height: number): void;
  remove(): void;
}

export interface FrameHandle extends BaseHandle {
  layoutMode: 'NONE' | 'HORIZONTAL' | 'VERTICAL';
  primaryAxisSizingMode: 'FIXED' | 'AUTO';
  counterAxisSizingMode: 'FIXED' | 'AUTO';
  itemSpacing: number;
  paddingLeft: number;
  paddingRight: number;
  paddingTop: number;
  paddingBottom: number;
  fills: SolidPaint[];
  strokes: SolidPaint[];
  strokeWeight: number;
  cornerRadius: number;
  effects: CanvasEffect[];
  appendChild(child: BaseHandle): void;
}

export interface ShapeHandle extends BaseHandle {
  fills: SolidPaint[];
  strokes: SolidPaint[];
  strokeWeight: number;
  cornerRadius: number;
  effects: CanvasEffect[];
}

export interface TextHandle extends BaseHandle {
  fontName: FontName;
  fontSize: number;
  characters: string;
  fills: SolidPaint[];
}

export interface CanvasApi {
  createFrame(): FrameHandle;
  createText(): TextHandle;
  createRectangle(): ShapeHandle;
  loadFont(font: FontName): Promise<void>;
  appendToPage(node: BaseHandle): void;
}

export interface ExecuteResult {
  roots: BaseHandle[];
  created: BaseHandle[];
  warnings: string[];
}

export const FALLBACK_FONT: FontName = { family: 'Inter', style: 'Regular' };

const STYLE_BY_WEIGHT: Record<number, string> = {
  100: 'Thin',
  200: 'ExtraLight',
  300: 'Light',
  400: 'Regular',
  500: 'Medium',
  600: 'SemiBold',
  700: 'Bold',
  800: 'ExtraBold',
  900: 'Black',
};

export function fontForNode(node: PlannedNode): FontName {
  return {
    family: node.fontFamily ?? FALLBACK_FONT.family,
    style: STYLE_BY_WEIGHT[node.fontWeight ?? 400] ?? 'Regular',
  };
}

function solidPaint(color: RGBA): SolidPaint {
  return { type: 'SOLID', color: { r: color.r, g: color.g, b: color.b }, opacity: color.a };
}

// The wire format carries only the effect name and color; offset and blur
// radius are fixed rendering constants.
function effectFor(name: string, color: RGBA): CanvasEffect {
  if (name === 'DROP_SHADOW' || name === 'INNER_SHADOW') {
    return { type: name, color, offset: { x: 0, y: 2 }, radius: 4, visible: true, blendMode: 'NORMAL' };
  }
  return { type: name === 'BACKGROUND_BLUR' ? 'BACKGROUND_BLUR' : 'LAYER_BLUR', radius: 4, visible: true };
}

export interface AutoLayoutParams {
  itemSpacing: number;
  paddingLeft: number;
  paddingRight: number;
  paddingTop: number;
  paddingBottom: number;
}

/**
 * Derive vertical auto-layout parameters from the planned child geometry, so
 * a real auto-layout frame reproduces the wire coordinates exactly.
 */
export function autoLayoutParams(plan: PlannedNode[], index: number): AutoLayoutParams {
  const frame = plan[index];
  const children = plan.filter((node) => node.parent === index);
  if (children.length === 0) {
    return { itemSpacing: 0, paddingLeft: 0, paddingRight: 0, paddingTop: 0, paddingBottom: 0 };
  }
  const first = children[0];
  const last = children[children.length - 1];
  return {
    itemSpacing: children.length > 1 ? children[1].y - (first.y + first.height) : 0,
    paddingLeft: Math.min(...children.map((node) => node.x)),
    paddingRight: frame.width - Math.max(...children.map((node) => node.x + node.width)),
    paddingTop: first.y,
    paddingBottom: frame.height - (last.y + last.height),
  };
}

function styleShape(node: ShapeHandle | FrameHandle, planned: PlannedNode): void {
  node.fills = planned.color ? [solidPaint(planned.color)] : [];
  if (planned.strokeColor) {
    node.strokes = [solidPaint(planned.strokeColor)];
    node.strokeWeight = planned.strokeWeight ?? 1;
  }
  if (planned.borderRadius !== undefined) {
    node.cornerRadius = planned.borderRadius;
  }
  if (planned.effect) {
    node.effects = [effectFor(planned.effect.name, planned.effect.color)];
  }
}

export async function executePlan(plan: PlannedNode[], canvas: CanvasApi): Promise<ExecuteResult> {
  const nodes: BaseHandle[] = [];
  const roots: BaseHandle[] = [];
  const warnings: string[] = [];

  try {
    for (let index = 0; index < plan.length; index += 1) {
      const planned = plan[index];
      let node: BaseHandle;

      if (planned.op === 'create_frame') {
        const frame = canvas.createFrame();
        if (planned.autolayout) {
          const params = autoLayoutParams(plan, index);
          frame.layoutMode = 'VERTICAL';
          frame.primaryAxisSizingMode = 'FIXED';
          frame.counterAxisSizingMode = 'FIXED';
          frame.itemSpacing = params.itemSpacing;
          frame.paddingLeft = params.paddingLeft;
          frame.paddingRight = params.paddingRight;
          frame.paddingTop = params.paddingTop;
          frame.paddingBottom = params.paddingBottom;
        }
        styleShape(frame, planned);
        node = frame;
      } else if (planned.op === 'create_rectangle') {
        const shape = canvas.createRectangle();
        styleShape(shape, planned);
        node = shape;
      } else {
        // Fonts load before the text node exists; a missing font falls back
        // to the declared default with a warning.
        const desired = fontForNode(planned);
        let font = desired;
        try {
          await canvas.loadFont(desired);
        } catch {
          warnings.push(
            `font ${desired.family} ${desired.style} is unavailable, falling back to ` +
              `${FALLBACK_FONT.family} ${FALLBACK_FONT.style}`
          );
          font = FALLBACK_FONT;
          await canvas.loadFont(FALLBACK_FONT);
        }
        const text = canvas.createText();
        text.fontName = font;
        text.characters = planned.text ?? '';
        if (planned.fontSize !== undefined) {
          text.fontSize = planned.fontSize;
        }
        if (planned.textColor) {
          text.fills = [solidPaint(planned.textColor)];
        }
        node = text;
      }

      nodes.push(node);
      node.name = planned.name;
      node.resize(planned.width, planned.height);
      if (planned.parent === null) {
        canvas.appendToPage(node);
        roots.push(node);
      } else {
        (nodes[planned.parent] as FrameHandle).appendChild(node);
      }
      node.x = planned.x;
      node.y = planned.y;
    }
  } catch (err) {
    // All-or-nothing: tear down in reverse creation order so children go
    // before their parents.
    for (let index = nodes.length - 1; index >= 0; index -= 1) {
      nodes[index].remove();
    }
    throw err;
  }

  return { roots, created: nodes, warnings };
}
