// Validates an instructions payload and turns it into an ordered plan of
// node-creation calls. Pure: no canvas access, so it runs under any test
// harness. One planned call per command, always.

import { InstructionOp, OPS } from './protocol';

export interface RGBA {
  r: number;
  g: number;
  b: number;
  a: number;
}

export interface PlannedNode {
  op: InstructionOp;
  parent: number | null;
  name: string;
  x: number;
  y: number;
  width: number;
  height: number;
  autolayout: boolean;
  color?: RGBA;
  strokeColor?: RGBA;
  strokeWeight?: number;
  borderRadius?: number;
  effect?: { name: string; color: RGBA };
  text?: string;
  textColor?: RGBA;
  fontFamily?: string;
  fontSize?: number;
  fontWeight?: number;
}

/** Payload rejected client-side; index is the offending command, -1 for the payload itself. */
export class SchemaError extends Error {
  readonly index: number;

  constructor(index: number, message: string) {
    super(index < 0 ? message : `command ${index}: ${message}`);
    this.name = 'SchemaError';
    this.index = index;
  }
}

const HEX_PATTERN = /^#[0-9A-Fa-f]{6}(?:[0-9A-Fa-f]{2})?$/;

export function hexToRgba(hex: string): RGBA {
  const value = parseInt(hex.slice(1), 16);
  if (hex.length === 9) {
    return {
      r: ((value >>> 24) & 255) / 255,
      g: ((value >>> 16) & 255) / 255,
      b: ((value >>> 8) & 255) / 255,
      a: (value & 255) / 255,
    };
  }
  return {
    r: ((value >> 16) & 255) / 255,
    g: ((value >> 8) & 255) / 255,
    b: (value & 255) / 255,
    a: 1,
  };
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === 'object' && value !== null && !Array.isArray(value);
}

function requireFinite(raw: Record<string, unknown>, key: string, index: number): number {
  const value = raw[key];
  if (typeof value !== 'number' || !Number.isFinite(value)) {
    throw new SchemaError(index, `'${key}' must be a finite number`);
  }
  return value;
}

function optionalColor(raw: Record<string, unknown>, key: string, index: number): RGBA | undefined {
  const value = raw[key];
  if (value === undefined) return undefined;
  if (typeof value !== 'string' || !HEX_PATTERN.test(value)) {
    throw new SchemaError(index, `'${key}' must be a #RRGGBB or #RRGGBBAA string`);
  }
  return hexToRgba(value);
}

function optionalNumber(raw: Record<string, unknown>, key: string, index: number): number | undefined {
  const value = raw[key];
  if (value === undefined) return undefined;
  if (typeof value !== 'number' || !Number.isFinite(value) || value < 0) {
    throw new SchemaError(index, `'${key}' must be a non-negative number`);
  }
  return value;
}

export function interpretInstructions(payload: unknown): PlannedNode[] {
  if (!Array.isArray(payload)) {
    throw new SchemaError(-1, 'instructions payload must be an array');
  }

  const plan: PlannedNode[] = [];
  payload.forEach((raw, index) => {
    if (!isRecord(raw)) {
      throw new SchemaError(index, 'command must be an object');
    }
    const op = raw.op;
    if (typeof op !== 'string' || !(OPS as readonly string[]).includes(op)) {
      throw new SchemaError(index, `unknown op ${JSON.stringify(op)}`);
    }

    const parent = raw.parent === undefined ? null : raw.parent;
    if (parent !== null) {
      if (typeof parent !== 'number' || !Number.isInteger(parent)) {
        throw new SchemaError(index, "'parent' must be null or an integer index");
      }
      if (parent < 0 || parent >= index) {
        throw new SchemaError(index, `'parent' must reference an earlier command, got ${parent}`);
      }
      if (plan[parent].op !== 'create_frame') {
        throw new SchemaError(index, `'parent' ${parent} is not a frame and cannot hold children`);
      }
    }

    if (typeof raw.name !== 'string') {
      throw new SchemaError(index, "'name' must be a string");
    }
    const node: PlannedNode = {
      op: op as InstructionOp,
      parent,
      name: raw.name,
      x: requireFinite(raw, 'x', index),
      y: requireFinite(raw, 'y', index),
      width: requireFinite(raw, 'width', index),
      height: requireFinite(raw, 'height', index),
      autolayout: false,
    };
    if (node.width <= 0 || node.height <= 0) {
      throw new SchemaError(index, 'width and height must be positive');
    }

    if (raw.autolayout !== undefined) {
      if (op !== 'create_frame' || typeof raw.autolayout !== 'boolean') {
        throw new SchemaError(index, "'autolayout' must be a boolean on a create_frame command");
      }
      node.autolayout = raw.autolayout;
    }

    if (op === 'create_text') {
      if (typeof raw.text !== 'string') {
        throw new SchemaError(index, "create_text requires a 'text' string");
      }
      node.text = raw.text;
      node.textColor = optionalColor(raw, 'text_color', index);
      node.fontSize = optionalNumber(raw, 'font_size', index);
      node.fontWeight = optionalNumber(raw, 'font_weight', index);
      if (raw.font_family !== undefined) {
        if (typeof raw.font_family !== 'string') {
          throw new SchemaError(index, "'font_family' must be a string");
        }
        node.fontFamily = raw.font_family;
      }
    } else {
      node.color = optionalColor(raw, 'color', index);
      node.strokeColor = optionalColor(raw, 'stroke_color', index);
      node.strokeWeight = optionalNumber(raw, 'stroke_weight', index);
      node.borderRadius = optionalNumber(raw, 'border_radius', index);
      if (raw.effect !== undefined) {
        if (!isRecord(raw.effect) || typeof raw.effect.effect_name !== 'string') {
          throw new SchemaError(index, "'effect' must be an object with an 'effect_name' string");
        }
        const color = optionalColor(raw.effect, 'effect_color', index);
        if (color === undefined) {
          throw new SchemaError(index, "'effect' requires an 'effect_color' string");
        }
        node.effect = { name: raw.effect.effect_name, color };
      }
    }

    plan.push(node);
  });

  return plan;
}
